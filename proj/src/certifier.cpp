#include "metric_gauge/certifier.hpp"

#include "metric_gauge/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace metric_gauge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SubsetSelection sorted_domain(const SpacePtr& space, IdList& domain, IdList& image) {
  if (!space) throw std::invalid_argument("map needs a space");
  if (domain.size() != image.size())
    throw std::invalid_argument("domain and image lists differ in length");
  for (Index v : image)
    if (!space->contains(v))
      throw UnknownIdError("image id " + std::to_string(v) + " is not a point of the space");
  std::vector<Index> perm(domain.size());
  std::iota(perm.begin(), perm.end(), Index{0});
  std::sort(perm.begin(), perm.end(), [&](Index a, Index b) { return domain[a] < domain[b]; });
  IdList d(domain.size()), im(image.size());
  for (Index a = 0; a < perm.size(); ++a) {
    d[a] = domain[perm[a]];
    im[a] = image[perm[a]];
  }
  domain = d;
  image = std::move(im);
  return SubsetSelection(space, std::move(d));
}

}  // namespace

MapSample::MapSample(SpacePtr space, IdList domain, IdList image)
    : domain_(sorted_domain(space, domain, image)), image_(std::move(image)) {}

double check_expansive(const MapSample& map) {
  const auto& X = map.space();
  const auto& dom = map.domain().members();
  const auto& img = map.image();
  double margin = kInf;
  for (Index a = 0; a < dom.size(); ++a)
    for (Index b = a + 1; b < dom.size(); ++b)
      margin = std::min(margin, X(img[a], img[b]) - X(dom[a], dom[b]));
  return margin;
}

double isometry_defect(const MapSample& map) {
  const auto& X = map.space();
  const auto& dom = map.domain().members();
  const auto& img = map.image();
  double defect = 0.0;
  for (Index a = 0; a < dom.size(); ++a)
    for (Index b = a + 1; b < dom.size(); ++b)
      defect = std::max(defect, std::abs(X(img[a], img[b]) - X(dom[a], dom[b])));
  return defect;
}

namespace {

std::string not_expansive_message(Index y, Index z, double margin) {
  std::ostringstream os;
  os.precision(17);
  os << "map contracts the pair (" << y << ", " << z << ") by " << -margin;
  return os.str();
}

// First pair (in domain order) attaining the most negative margin.
void require_expansive(const MapSample& map) {
  const auto& X = map.space();
  const auto& dom = map.domain().members();
  const auto& img = map.image();
  double worst = 0.0;
  Index wy = 0, wz = 0;
  for (Index a = 0; a < dom.size(); ++a)
    for (Index b = a + 1; b < dom.size(); ++b) {
      const double m = X(img[a], img[b]) - X(dom[a], dom[b]);
      if (m < worst) {
        worst = m;
        wy = dom[a];
        wz = dom[b];
      }
    }
  if (worst < 0.0) throw NotExpansive(wy, wz, worst);
}

}  // namespace

NotExpansive::NotExpansive(Index y, Index z, double margin)
    : std::runtime_error(not_expansive_message(y, z, margin)), y_(y), z_(z), margin_(margin) {}

const char* to_string(HypothesisFlag flag) {
  switch (flag) {
    case HypothesisFlag::DensityGap: return "DensityGap";
    case HypothesisFlag::PackingInexact: return "PackingInexact";
    case HypothesisFlag::PackingMismatch: return "PackingMismatch";
    case HypothesisFlag::GaugeCertificateFailed: return "GaugeCertificateFailed";
    case HypothesisFlag::ImageNotSeparated: return "ImageNotSeparated";
    case HypothesisFlag::PairRatioViolated: return "PairRatioViolated";
    case HypothesisFlag::ImageNetNotCovering: return "ImageNetNotCovering";
  }
  return "Unknown";
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::HypothesesUnmet: return "HYPOTHESES_UNMET";
  }
  return "UNKNOWN";
}

CertReport certify_at_epsilon(const MapSample& map, double epsilon, const CertifyConfig& config) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw std::invalid_argument("epsilon must be positive and finite");
  require_expansive(map);

  const MetricSpace& X = map.space();
  const IdList& members = map.domain().members();
  const IdList& image = map.image();
  const MetricSpace Y = restrict_space(X, members);

  CertReport report;
  report.epsilon = epsilon;
  report.density_gap = map.domain().density_gap();
  report.expansive_margin = check_expansive(map);
  auto raise = [&](HypothesisFlag f) {
    if (std::find(report.flags.begin(), report.flags.end(), f) == report.flags.end())
      report.flags.push_back(f);
  };
  if (report.density_gap > 0.0) raise(HypothesisFlag::DensityGap);

  // (1) packing numbers of X and Y
  report.packing_x = max_separated_exact(X, epsilon, config.budget);
  report.packing_y = max_separated_exact(Y, epsilon, config.budget);
  for (Index& v : report.packing_y.witness.members) v = members[v];
  if (!report.packing_x.exact || !report.packing_y.exact) raise(HypothesisFlag::PackingInexact);
  if (report.packing_y.n_eps < report.packing_x.n_eps) raise(HypothesisFlag::PackingMismatch);

  // (2) a net in Y of maximal size with near-maximal gauge
  const Index n_y = report.packing_y.n_eps;
  GaugeResult net_local =
      config.exact_net
          ? max_gauge(Y, epsilon, n_y, config.budget)
          : max_gauge_local(Y, epsilon, n_y, config.restarts, config.seed, config.workers, config.budget);
  report.net.epsilon = epsilon;
  for (Index v : net_local.set.members) report.net.members.push_back(members[v]);
  const double net_log = log_gauge(report.net, X);

  try {
    report.gauge_x = max_gauge(X, epsilon, report.packing_x.n_eps, config.budget);
  } catch (const GaugeBudgetExhausted&) {
    report.gauge_x.reset();
  }

  report.net_gauge.set = report.net;
  report.net_gauge.log_gauge = net_log;
  report.net_gauge.nodes = net_local.nodes;
  if (report.gauge_x && report.gauge_x->log_upper) {
    // g_eps(X) >= G(net) whenever the net is a maximal-size eps-net of X;
    // clamping absorbs summation-order rounding only.
    const double upper = std::max(*report.gauge_x->log_upper, net_log);
    report.net_gauge.log_upper = upper;
    report.net_gauge.mode = (report.gauge_x->mode == GaugeMode::Exact && upper == net_log)
                                ? GaugeMode::Exact
                                : GaugeMode::UpperBounded;
    report.near_maximality = near_maximality_certificate(report.net_gauge, epsilon);
    report.pair_ratio_bound = std::exp(upper - net_log);
    if (!report.near_maximality->pass) raise(HypothesisFlag::GaugeCertificateFailed);
  } else {
    report.net_gauge.mode = GaugeMode::Heuristic;
    report.pair_ratio_bound = kInf;
    raise(HypothesisFlag::GaugeCertificateFailed);
  }

  // (3) image of the net
  std::vector<Index> slot_of(X.size(), X.size());
  for (Index a = 0; a < members.size(); ++a) slot_of[members[a]] = a;
  auto f = [&](Index x) { return image[slot_of[x]]; };

  for (Index x : report.net.members) report.net_image.push_back(f(x));
  report.image_separated = true;
  for (Index a = 0; a < report.net_image.size(); ++a)
    for (Index b = a + 1; b < report.net_image.size(); ++b)
      if (!(X(report.net_image[a], report.net_image[b]) > epsilon)) report.image_separated = false;
  if (!report.image_separated) raise(HypothesisFlag::ImageNotSeparated);

  // (4) pairwise ratio bound on the net
  const auto& net = report.net.members;
  for (Index a = 0; a < net.size(); ++a)
    for (Index b = a + 1; b < net.size(); ++b)
      if (X(f(net[a]), f(net[b])) > report.pair_ratio_bound * X(net[a], net[b]))
        ++report.pair_ratio_violations;
  if (report.pair_ratio_violations > 0) raise(HypothesisFlag::PairRatioViolated);

  // (5) nearest image-net member for every f(y); ties go to the smallest id
  std::vector<Index> witness(members.size());
  for (Index a = 0; a < members.size(); ++a) {
    const Index fy = image[a];
    double nearest = kInf;
    for (Index x : net) {
      const double d = X(fy, f(x));
      if (d < nearest) {
        nearest = d;
        witness[a] = x;
      }
    }
    if (nearest > epsilon) ++report.uncovered_points;
  }
  if (report.uncovered_points > 0) raise(HypothesisFlag::ImageNetNotCovering);

  const double ratio = report.pair_ratio_bound;
  report.max_excess = members.size() > 1 ? -kInf : 0.0;
  report.bound_excess = members.size() > 1 ? -kInf : 0.0;
  report.pairs.reserve(members.size() * (members.size() - 1) / 2);
  for (Index a = 0; a < members.size(); ++a)
    for (Index b = a + 1; b < members.size(); ++b) {
      PairBound p;
      p.y = members[a];
      p.z = members[b];
      p.witness_y = witness[a];
      p.witness_z = witness[b];
      p.distance = X(p.y, p.z);
      p.observed = X(image[a], image[b]);
      p.net_image_bound = X(f(p.witness_y), f(p.witness_z)) + 2.0 * epsilon;
      p.chain_bound = ratio * (p.distance + 2.0 * epsilon) + 2.0 * epsilon;
      if (p.observed > p.chain_bound) ++report.chain_violations;
      report.max_excess = std::max(report.max_excess, p.observed - p.distance);
      report.bound_excess = std::max(report.bound_excess, p.chain_bound - p.distance);
      report.pairs.push_back(p);
    }

  std::sort(report.flags.begin(), report.flags.end());
  return report;
}

EpsilonSchedule::EpsilonSchedule(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("epsilon schedule is empty");
  for (Index k = 0; k < values_.size(); ++k) {
    if (!(values_[k] > 0.0) || !std::isfinite(values_[k]))
      throw std::invalid_argument("epsilon schedule values must be positive and finite");
    if (k > 0 && !(values_[k] < values_[k - 1]))
      throw std::invalid_argument("epsilon schedule must be strictly decreasing");
  }
}

EpsilonSchedule EpsilonSchedule::geometric(double start, double ratio, Index count) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("schedule ratio must lie in (0, 1)");
  if (count == 0) throw std::invalid_argument("schedule count must be at least 1");
  std::vector<double> v(count);
  for (Index k = 0; k < count; ++k) v[k] = start * std::pow(ratio, static_cast<double>(k));
  return EpsilonSchedule(std::move(v));
}

double default_tol_iso(double diameter) { return kDefaultTolIsoRelative * diameter; }

EpsilonSchedule default_schedule(double diameter, double tol_iso) {
  if (!(diameter > 0.0)) diameter = 1.0;  // single-point space
  const double start = 0.5 * diameter;
  Index count = kMinDefaultScheduleLength;
  while (count < 64 && !(4.0 * start * std::ldexp(1.0, -static_cast<int>(count - 1)) <= tol_iso))
    ++count;
  return EpsilonSchedule::geometric(start, 0.5, count);
}

IsometryCertificate certify_isometry(const MapSample& map, const EpsilonSchedule& schedule,
                                     double tol_iso, const CertifyConfig& config) {
  if (!(tol_iso > 0.0)) throw std::invalid_argument("tol_iso must be positive");
  require_expansive(map);

  IsometryCertificate cert;
  cert.tol_iso = tol_iso;
  cert.expansive_margin = check_expansive(map);
  cert.direct_defect = isometry_defect(map);
  cert.reports.resize(schedule.size());

  CertifyConfig inner = config;
  const unsigned outer = std::max(1u, config.workers);
  if (outer > 1) inner.workers = 1;
  parallel_for(schedule.size(), outer, [&](std::size_t k) {
    cert.reports[k] = certify_at_epsilon(map, schedule.values()[k], inner);
  });

  bool any_clear = false;
  for (const auto& r : cert.reports) {
    if (!r.hypotheses_clear()) continue;
    any_clear = true;
    if (r.chain_violations == 0 && r.bound_excess <= tol_iso && !cert.passing_epsilon)
      cert.passing_epsilon = r.epsilon;
  }
  if (!any_clear)
    cert.verdict = Verdict::HypothesesUnmet;
  else if (cert.passing_epsilon && cert.direct_defect <= tol_iso)
    cert.verdict = Verdict::Pass;
  else
    cert.verdict = Verdict::Fail;
  return cert;
}

}  // namespace metric_gauge
