#pragma once

#include "metric_gauge/gauge.hpp"
#include "metric_gauge/metric_space.hpp"
#include "metric_gauge/nets.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace metric_gauge {

/// A map f: Y -> X given as a table. image()[a] = f(domain().members()[a]).
class MapSample {
 public:
  /// `domain` and `image` are aligned lists; they are re-sorted by domain id.
  MapSample(SpacePtr space, IdList domain, IdList image);

  const MetricSpace& space() const noexcept { return domain_.space(); }
  const SpacePtr& space_ptr() const noexcept { return domain_.space_ptr(); }
  const SubsetSelection& domain() const noexcept { return domain_; }
  const IdList& image() const noexcept { return image_; }
  Index size() const noexcept { return image_.size(); }

 private:
  SubsetSelection domain_;
  IdList image_;
};

/// min over distinct domain pairs of d(f(y), f(z)) - d(y, z); +inf for a
/// single-point domain. The map is expansive iff the margin is >= 0.
double check_expansive(const MapSample& map);

/// max over domain pairs of |d(f(y), f(z)) - d(y, z)|.
double isometry_defect(const MapSample& map);

class NotExpansive : public std::runtime_error {
 public:
  NotExpansive(Index y, Index z, double margin);
  Index y() const noexcept { return y_; }
  Index z() const noexcept { return z_; }
  double margin() const noexcept { return margin_; }

 private:
  Index y_, z_;
  double margin_;
};

enum class HypothesisFlag {
  DensityGap,              // Y is not all of X
  PackingInexact,          // an n_eps search hit its budget
  PackingMismatch,         // n_eps(Y) < n_eps(X)
  GaugeCertificateFailed,  // near-maximality not certified
  ImageNotSeparated,       // f(net) is not eps-separated
  PairRatioViolated,       // a net pair breaks the certified ratio bound
  ImageNetNotCovering,     // some f(y) is farther than eps from f(net)
};

const char* to_string(HypothesisFlag flag);

struct PairBound {
  Index y = 0, z = 0;                  // ids in X, y < z
  Index witness_y = 0, witness_z = 0;  // net members x_i, x_j
  double distance = 0.0;               // d(y, z)
  double observed = 0.0;               // d(f(y), f(z))
  double net_image_bound = 0.0;        // d(f(x_i), f(x_j)) + 2 eps
  double chain_bound = 0.0;            // ratio * (d(y, z) + 2 eps) + 2 eps
};

struct CertifyConfig {
  std::uint64_t budget = kDefaultBudget;
  /// Exact branch and bound for the net; otherwise seeded local search.
  bool exact_net = true;
  Index restarts = kDefaultRestarts;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

struct CertReport {
  double epsilon = 0.0;
  double density_gap = 0.0;
  double expansive_margin = 0.0;

  PackingResult packing_x;
  PackingResult packing_y;  // witness ids mapped into X

  SeparatedSet net;  // in Y, ids of X
  std::optional<GaugeResult> gauge_x;
  GaugeResult net_gauge;  // net with the upper bound of log g_eps(X)
  std::optional<NearMaximality> near_maximality;

  IdList net_image;
  bool image_separated = false;
  double pair_ratio_bound = 1.0;
  Index pair_ratio_violations = 0;

  std::vector<PairBound> pairs;
  Index uncovered_points = 0;
  double max_excess = 0.0;    // max over pairs of observed - d(y, z)
  double bound_excess = 0.0;  // max over pairs of chain_bound - d(y, z)
  Index chain_violations = 0; // pairs with observed > chain_bound

  std::vector<HypothesisFlag> flags;

  bool hypotheses_clear() const noexcept { return flags.empty(); }
};

/// Runs the near-maximal-net argument at one scale and records every
/// intermediate bound. Throws NotExpansive for contracting maps; unmet
/// hypotheses are reported through `flags`.
CertReport certify_at_epsilon(const MapSample& map, double epsilon,
                              const CertifyConfig& config = {});

class EpsilonSchedule {
 public:
  explicit EpsilonSchedule(std::vector<double> values);
  static EpsilonSchedule geometric(double start, double ratio, Index count);

  const std::vector<double>& values() const noexcept { return values_; }
  Index size() const noexcept { return values_.size(); }
  double smallest() const noexcept { return values_.back(); }

 private:
  std::vector<double> values_;
};

inline constexpr Index kMinDefaultScheduleLength = 15;
inline constexpr double kDefaultTolIsoRelative = 1e-6;

/// eps_k = diam/2 * 2^-k for k = 0, 1, ... with at least 15 values, extended
/// until the isometry chain can resolve tol_iso (4 eps_k <= tol_iso).
EpsilonSchedule default_schedule(double diameter, double tol_iso);
double default_tol_iso(double diameter);

enum class Verdict { Pass, Fail, HypothesesUnmet };

const char* to_string(Verdict verdict);

struct IsometryCertificate {
  Verdict verdict = Verdict::HypothesesUnmet;
  double tol_iso = 0.0;
  double expansive_margin = 0.0;
  double direct_defect = 0.0;
  std::optional<double> passing_epsilon;
  std::vector<CertReport> reports;  // schedule order
};

IsometryCertificate certify_isometry(const MapSample& map, const EpsilonSchedule& schedule,
                                     double tol_iso, const CertifyConfig& config = {});

}  // namespace metric_gauge
