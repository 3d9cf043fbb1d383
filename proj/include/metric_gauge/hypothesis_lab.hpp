#pragma once

#include "metric_gauge/certifier.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace metric_gauge {

/// Expansive non-isometries on finite truncations of spaces that break a
/// hypothesis of the isometry theorem.
///   doubling_line:  X = {0..N-1} on the line, Y = {0..(N-1)/2}, f(n) = 2n
///   shift_shrinking: X = shrinking_shift_family(N), Y = {x_1..x_{N-1}},
///                    f(x_i) = x_{i+1}
///   scaling_grid:   X = {0..3N} on the line, Y = {0..N-1}, f(n) = 3n
enum class DemoFamily { DoublingLine, ShiftShrinking, ScalingGrid };

class BadFamily : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A shipped demo passed certification at some scale, which would
/// contradict the theorem.
class TheoremContradicted : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

DemoFamily parse_demo_family(const std::string& name);
const char* to_string(DemoFamily family);

inline constexpr Index kMinDemoSize = 3;

MapSample make_demo_map(DemoFamily family, Index n);

struct DemoResult {
  DemoFamily family = DemoFamily::DoublingLine;
  Index n = 0;
  double margin = 0.0;
  double defect = 0.0;
  double density_gap = 0.0;
  std::vector<std::pair<double, Index>> n_eps_trace;  // (eps, n_eps(X))
  std::vector<CertReport> reports;                    // default schedule
  bool flagged_at_every_epsilon = false;
};

DemoResult run_demo(DemoFamily family, Index n, const CertifyConfig& config = {});

struct DemoSweepRow {
  Index n = 0;
  double margin = 0.0;
  double defect = 0.0;
  double density_gap = 0.0;
};

/// Margin, defect and density gap for every size in [kMinDemoSize, max_n].
std::vector<DemoSweepRow> demo_sweep(DemoFamily family, Index max_n);

}  // namespace metric_gauge
