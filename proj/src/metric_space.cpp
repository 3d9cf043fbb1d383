#include "metric_gauge/metric_space.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace metric_gauge {

const char* to_string(ValidationErrorKind kind) {
  switch (kind) {
    case ValidationErrorKind::Empty: return "Empty";
    case ValidationErrorKind::NotSquare: return "NotSquare";
    case ValidationErrorKind::NonFinite: return "NonFinite";
    case ValidationErrorKind::NonZeroDiagonal: return "NonZeroDiagonal";
    case ValidationErrorKind::AsymmetricMatrix: return "AsymmetricMatrix";
    case ValidationErrorKind::NegativeDistance: return "NegativeDistance";
    case ValidationErrorKind::ZeroOffDiagonal: return "ZeroOffDiagonal";
    case ValidationErrorKind::TriangleViolation: return "TriangleViolation";
    case ValidationErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ValidationErrorKind::LabelCountMismatch: return "LabelCountMismatch";
  }
  return "Unknown";
}

ValidationError::ValidationError(ValidationErrorKind kind, std::string message,
                                 Index i, Index j, Index k, double slack)
    : std::runtime_error(std::move(message)), kind_(kind), i_(i), j_(j), k_(k), slack_(slack) {}

bool MetricSpace::has_labels() const noexcept {
  return std::any_of(labels_.begin(), labels_.end(),
                     [](const std::string& s) { return !s.empty(); });
}

std::optional<Index> MetricSpace::find_label(const std::string& label) const {
  if (label.empty()) return std::nullopt;
  for (Index i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

namespace {

std::string pair_message(const char* what, Index i, Index j, double a, double b) {
  std::ostringstream os;
  os.precision(17);
  os << what << " at (" << i << ", " << j << "): " << a;
  if (!std::isnan(b)) os << " vs " << b;
  return os.str();
}

}  // namespace

MetricSpace validate_metric(const DistanceMatrix& matrix, double tol_metric,
                            std::string name, std::vector<std::string> labels) {
  using K = ValidationErrorKind;
  if (matrix.rows() == 0 || matrix.cols() == 0) throw ValidationError(K::Empty, "empty matrix");
  if (matrix.rows() != matrix.cols()) {
    std::ostringstream os;
    os << "matrix is " << matrix.rows() << "x" << matrix.cols() << ", not square";
    throw ValidationError(K::NotSquare, os.str());
  }
  if (!(tol_metric >= 0.0) || !std::isfinite(tol_metric))
    throw std::invalid_argument("tol_metric must be finite and non-negative");

  const Index n = static_cast<Index>(matrix.rows());
  if (!matrix.allFinite()) {
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (!std::isfinite(matrix(i, j)))
          throw ValidationError(K::NonFinite, pair_message("non-finite entry", i, j, matrix(i, j), NAN), i, j);
  }

  if (labels.empty()) labels.assign(n, std::string{});
  if (labels.size() != n)
    throw ValidationError(K::LabelCountMismatch, "label count does not match matrix size");
  {
    std::set<std::string> seen;
    for (Index i = 0; i < n; ++i) {
      if (labels[i].empty()) continue;
      if (!seen.insert(labels[i]).second)
        throw ValidationError(K::DuplicateLabel, "duplicate label '" + labels[i] + "'", i);
    }
  }

  DistanceMatrix d = matrix;
  for (Index i = 0; i < n; ++i) {
    if (d(i, i) != 0.0)
      throw ValidationError(K::NonZeroDiagonal, pair_message("non-zero diagonal", i, i, d(i, i), NAN), i, i);
    for (Index j = i + 1; j < n; ++j) {
      const double a = d(i, j);
      const double b = d(j, i);
      if (a != b) {
        if (std::abs(a - b) > kSymmetrizeTol)
          throw ValidationError(K::AsymmetricMatrix, pair_message("asymmetric entries", i, j, a, b), i, j);
        d(i, j) = d(j, i) = 0.5 * (a + b);
      }
      if (d(i, j) < 0.0)
        throw ValidationError(K::NegativeDistance, pair_message("negative distance", i, j, d(i, j), NAN), i, j);
      if (d(i, j) == 0.0)
        throw ValidationError(K::ZeroOffDiagonal, pair_message("zero distance between distinct points", i, j, 0.0, NAN), i, j);
    }
  }

  // Exhaustive scan over distinct triples; the first worst triple wins ties.
  double worst = -std::numeric_limits<double>::infinity();
  Index wi = 0, wj = 0, wk = 0;
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k < n; ++k) {
      if (k == i) continue;
      for (Index j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        const double slack = d(i, k) - d(i, j) - d(j, k);
        if (slack > worst) {
          worst = slack;
          wi = i, wj = j, wk = k;
        }
      }
    }
  if (worst > tol_metric) {
    std::ostringstream os;
    os.precision(17);
    os << "triangle inequality violated: d(" << wi << "," << wk << ") = " << d(wi, wk)
       << " exceeds d(" << wi << "," << wj << ") + d(" << wj << "," << wk << ") by " << worst;
    throw ValidationError(K::TriangleViolation, os.str(), wi, wj, wk, worst);
  }

  MetricSpace space;
  space.name_ = std::move(name);
  space.labels_ = std::move(labels);
  space.dist_ = std::move(d);
  space.diameter_ = space.dist_.maxCoeff();
  space.worst_slack_ = worst;
  return space;
}

DistanceMatrix shortest_path_closure(const DistanceMatrix& matrix) {
  DistanceMatrix d = matrix;
  const Eigen::Index n = d.rows();
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index i = 0; i < n; ++i) {
      const double dik = d(i, k);
      for (Eigen::Index j = 0; j < n; ++j) {
        const double via = dik + d(k, j);
        if (via < d(i, j)) d(i, j) = via;
      }
    }
  return d;
}

MetricSpace repair_metric(const DistanceMatrix& matrix, std::string name,
                          std::vector<std::string> labels) {
  using K = ValidationErrorKind;
  if (matrix.rows() != matrix.cols())
    throw ValidationError(K::NotSquare, "matrix is not square");
  if (!matrix.allFinite()) throw ValidationError(K::NonFinite, "non-finite entry");
  const Index n = static_cast<Index>(matrix.rows());
  for (Index i = 0; i < n; ++i) {
    if (matrix(i, i) != 0.0)
      throw ValidationError(K::NonZeroDiagonal, "non-zero diagonal", i, i);
    for (Index j = i + 1; j < n; ++j) {
      if (matrix(i, j) != matrix(j, i))
        throw ValidationError(K::AsymmetricMatrix, pair_message("asymmetric entries", i, j, matrix(i, j), matrix(j, i)), i, j);
      if (matrix(i, j) <= 0.0)
        throw ValidationError(matrix(i, j) < 0.0 ? K::NegativeDistance : K::ZeroOffDiagonal,
                              pair_message("non-positive distance", i, j, matrix(i, j), NAN), i, j);
    }
  }
  return validate_metric(shortest_path_closure(matrix), kDefaultTolMetric, std::move(name),
                         std::move(labels));
}

MetricSpace restrict_space(const MetricSpace& space, const IdList& members) {
  const Index m = members.size();
  DistanceMatrix sub(m, m);
  std::vector<std::string> labels(m);
  for (Index a = 0; a < m; ++a) {
    if (!space.contains(members[a]))
      throw UnknownIdError("id " + std::to_string(members[a]) + " is not a point of the space");
    labels[a] = space.label(members[a]);
    for (Index b = 0; b < m; ++b) {
      if (!space.contains(members[b]))
        throw UnknownIdError("id " + std::to_string(members[b]) + " is not a point of the space");
      sub(a, b) = space(members[a], members[b]);
    }
  }
  // Sub-matrices inherit the parent's triangle slack, never more.
  const double tol = std::max(kDefaultTolMetric, space.worst_triangle_slack());
  return validate_metric(sub, tol, space.name(), std::move(labels));
}

namespace {

std::string format_value(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> indexed_labels(const char* prefix, Index n, Index first = 0) {
  std::vector<std::string> out(n);
  for (Index i = 0; i < n; ++i) out[i] = prefix + std::to_string(first + i);
  return out;
}

struct BuiltinVisitor {
  MetricSpace operator()(const LinePoints& s) const {
    const Index n = s.values.size();
    if (n == 0) throw BadSpecError("line_points needs at least one value");
    DistanceMatrix d(n, n);
    std::vector<std::string> labels(n);
    for (Index i = 0; i < n; ++i) {
      if (!std::isfinite(s.values[i])) throw BadSpecError("line_points values must be finite");
      labels[i] = format_value(s.values[i]);
      for (Index j = 0; j < n; ++j) d(i, j) = std::abs(s.values[i] - s.values[j]);
    }
    std::set<double> distinct(s.values.begin(), s.values.end());
    if (distinct.size() != n) throw BadSpecError("line_points values must be distinct");
    return validate_metric(d, kDefaultTolMetric, "line_points", std::move(labels));
  }

  MetricSpace operator()(const CircleGeodesic& s) const {
    if (s.n == 0) throw BadSpecError("circle_geodesic needs N >= 1");
    const double step = 2.0 * std::numbers::pi / static_cast<double>(s.n);
    DistanceMatrix d(s.n, s.n);
    for (Index i = 0; i < s.n; ++i)
      for (Index j = 0; j < s.n; ++j) {
        const Index gap = i > j ? i - j : j - i;
        d(i, j) = static_cast<double>(std::min(gap, s.n - gap)) * step;
      }
    return validate_metric(d, kDefaultTolMetric, "circle_geodesic", indexed_labels("p", s.n));
  }

  MetricSpace operator()(const CircleChordal& s) const {
    if (s.n == 0) throw BadSpecError("circle_chordal needs N >= 1");
    DistanceMatrix d(s.n, s.n);
    for (Index i = 0; i < s.n; ++i)
      for (Index j = 0; j < s.n; ++j) {
        const Index gap = i > j ? i - j : j - i;
        const Index m = std::min(gap, s.n - gap);
        d(i, j) = 2.0 * std::sin(std::numbers::pi * static_cast<double>(m) / static_cast<double>(s.n));
      }
    return validate_metric(d, kDefaultTolMetric, "circle_chordal", indexed_labels("p", s.n));
  }

  MetricSpace operator()(const TorusGrid& s) const {
    if (s.a == 0 || s.b == 0) throw BadSpecError("torus_grid needs a, b >= 1");
    const Index n = s.a * s.b;
    DistanceMatrix d(n, n);
    std::vector<std::string> labels(n);
    auto wrap = [](Index u, Index v, Index period) {
      const Index gap = u > v ? u - v : v - u;
      return static_cast<double>(std::min(gap, period - gap));
    };
    for (Index p = 0; p < n; ++p) {
      labels[p] = "(" + std::to_string(p / s.b) + "," + std::to_string(p % s.b) + ")";
      for (Index q = 0; q < n; ++q) {
        const double dx = wrap(p / s.b, q / s.b, s.a);
        const double dy = wrap(p % s.b, q % s.b, s.b);
        d(p, q) = std::sqrt(dx * dx + dy * dy);
      }
    }
    return validate_metric(d, kDefaultTolMetric, "torus_grid", std::move(labels));
  }

  MetricSpace operator()(const Equilateral& s) const {
    if (s.n == 0) throw BadSpecError("equilateral needs n >= 1");
    if (!(s.side > 0.0) || !std::isfinite(s.side)) throw BadSpecError("equilateral side must be positive");
    DistanceMatrix d = DistanceMatrix::Constant(s.n, s.n, s.side);
    d.diagonal().setZero();
    return validate_metric(d, kDefaultTolMetric, "equilateral", indexed_labels("e", s.n));
  }

  MetricSpace operator()(const ShrinkingShiftFamily& s) const {
    if (s.n == 0) throw BadSpecError("shrinking_shift_family needs N >= 1");
    DistanceMatrix d(s.n, s.n);
    for (Index i = 0; i < s.n; ++i)
      for (Index j = 0; j < s.n; ++j)
        d(i, j) = i == j ? 0.0 : 2.0 - 1.0 / static_cast<double>(std::max(i, j) + 1);
    return validate_metric(d, kDefaultTolMetric, "shrinking_shift_family", indexed_labels("x", s.n, 1));
  }
};

}  // namespace

MetricSpace make_builtin(const GeneratorSpec& spec) { return std::visit(BuiltinVisitor{}, spec); }

std::string generator_name(const GeneratorSpec& spec) {
  struct {
    std::string operator()(const LinePoints&) const { return "line_points"; }
    std::string operator()(const CircleGeodesic&) const { return "circle_geodesic"; }
    std::string operator()(const CircleChordal&) const { return "circle_chordal"; }
    std::string operator()(const TorusGrid&) const { return "torus_grid"; }
    std::string operator()(const Equilateral&) const { return "equilateral"; }
    std::string operator()(const ShrinkingShiftFamily&) const { return "shrinking_shift_family"; }
  } v;
  return std::visit(v, spec);
}

MetricSpace random_repaired_metric(Index n, unsigned long long seed, double lo, double hi) {
  if (n == 0) throw BadSpecError("random metric needs n >= 1");
  if (!(lo > 0.0) || !(hi >= lo)) throw BadSpecError("random metric needs 0 < lo <= hi");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  DistanceMatrix d = DistanceMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) d(i, j) = d(j, i) = u(rng);
  return repair_metric(d, "random_" + std::to_string(seed));
}

double density_gap(const MetricSpace& space, const IdList& members) {
  if (members.empty()) throw std::invalid_argument("density gap of an empty subset");
  double gap = 0.0;
  for (Index x = 0; x < space.size(); ++x) {
    double nearest = std::numeric_limits<double>::infinity();
    for (Index y : members) nearest = std::min(nearest, space(x, y));
    gap = std::max(gap, nearest);
  }
  return gap;
}

SubsetSelection::SubsetSelection(SpacePtr space, IdList members)
    : space_(std::move(space)), members_(std::move(members)) {
  if (!space_) throw std::invalid_argument("subset needs a space");
  if (members_.empty()) throw std::invalid_argument("subset must be nonempty");
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
    throw std::invalid_argument("subset members must be distinct");
  if (!space_->contains(members_.back()))
    throw UnknownIdError("id " + std::to_string(members_.back()) + " is not a point of the space");
  density_gap_ = metric_gauge::density_gap(*space_, members_);
}

SubsetSelection SubsetSelection::whole(SpacePtr space) {
  IdList all(space->size());
  for (Index i = 0; i < all.size(); ++i) all[i] = i;
  return SubsetSelection(std::move(space), std::move(all));
}

double density_gap(const SubsetSelection& subset) { return subset.density_gap(); }

}  // namespace metric_gauge
