#pragma once

#include "metric_gauge/nets.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>

namespace metric_gauge {

enum class GaugeMode { Exact, UpperBounded, Heuristic };

const char* to_string(GaugeMode mode);

/// A separated set with its log-gauge sum_{i<j} ln d(x_i, x_j) and, unless
/// the mode is heuristic, a valid upper bound on log g_eps.
struct GaugeResult {
  SeparatedSet set;
  double log_gauge = 0.0;
  GaugeMode mode = GaugeMode::Heuristic;
  std::optional<double> log_upper;
  std::uint64_t nodes = 0;
};

class NoSetOfRequiredSize : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class HeuristicModeRejected : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Budget ran out before any set of the requested size was seen.
class GaugeBudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double log_gauge(const IdList& members, const MetricSpace& space);
double log_gauge(const SeparatedSet& set, const MetricSpace& space);

/// C(n,2) * ln(max(1, diam)): bounds the log-gauge of any n-point subset.
double log_gauge_ceiling(Index n, double diameter);

/// Two log-gauges closer than this are treated as equal, and the
/// lexicographically smaller set wins.
double gauge_tie_tolerance(double log_gauge);

/// Branch and bound over eps-separated sets of exactly `require_size`
/// points maximizing the log-gauge.
GaugeResult max_gauge(const MetricSpace& space, double epsilon, Index require_size,
                      std::uint64_t budget = kDefaultBudget);

inline constexpr Index kDefaultRestarts = 32;

/// Multi-restart swap local search. Deterministic for a fixed seed
/// regardless of the worker count.
GaugeResult max_gauge_local(const MetricSpace& space, double epsilon, Index require_size,
                            Index restarts, std::uint64_t seed, unsigned workers = 1,
                            std::uint64_t budget = kDefaultBudget);

struct NearMaximality {
  double factor = 1.0;  // exp(log_upper - log_gauge)
  bool pass = false;    // factor < 1 + eps
};

NearMaximality near_maximality_certificate(const GaugeResult& candidate, double epsilon);

}  // namespace metric_gauge
