#pragma once

// Brute-force reference computations used only by the tests. None of these
// call into the search code they check.

#include "metric_gauge/metric_space.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace oracle {

using metric_gauge::DistanceMatrix;
using metric_gauge::IdList;
using metric_gauge::Index;

/// Largest d(i,k) - d(i,j) - d(j,k) over distinct triples.
inline double worst_triangle_slack(const DistanceMatrix& d) {
  double worst = -std::numeric_limits<double>::infinity();
  const auto n = d.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k)
        if (i != j && j != k && i != k) worst = std::max(worst, d(i, k) - d(i, j) - d(j, k));
  return worst;
}

inline IdList bits_to_ids(std::uint64_t mask, Index n) {
  IdList out;
  for (Index i = 0; i < n; ++i)
    if (mask >> i & 1u) out.push_back(i);
  return out;
}

inline bool separated(const IdList& s, double eps, const DistanceMatrix& d) {
  for (Index a = 0; a < s.size(); ++a)
    for (Index b = a + 1; b < s.size(); ++b)
      if (!(d(s[a], s[b]) > eps)) return false;
  return true;
}

/// Maximum size of an eps-separated subset and the lexicographically
/// smallest witness, by enumerating all 2^n subsets (n <= 20).
struct Packing {
  Index size = 0;
  IdList witness;
};

inline Packing max_separated(const DistanceMatrix& d, double eps) {
  const Index n = static_cast<Index>(d.rows());
  Packing best;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    IdList s = bits_to_ids(mask, n);
    if (s.size() < best.size || !separated(s, eps, d)) continue;
    if (s.size() > best.size || s < best.witness) best = {s.size(), s};
  }
  return best;
}

inline double log_gauge(const IdList& s, const DistanceMatrix& d) {
  double sum = 0.0;
  for (Index a = 0; a < s.size(); ++a)
    for (Index b = a + 1; b < s.size(); ++b) sum += std::log(d(s[a], s[b]));
  return sum;
}

/// Maximum log-gauge over eps-separated subsets of exactly k points.
struct BestGauge {
  bool found = false;
  double log_gauge = -std::numeric_limits<double>::infinity();
  IdList witness;
};

inline BestGauge max_gauge(const DistanceMatrix& d, double eps, Index k) {
  const Index n = static_cast<Index>(d.rows());
  BestGauge best;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    if (static_cast<Index>(__builtin_popcountll(mask)) != k) continue;
    IdList s = bits_to_ids(mask, n);
    if (!separated(s, eps, d)) continue;
    const double g = log_gauge(s, d);
    if (!best.found || g > best.log_gauge) best = {true, g, s};
  }
  return best;
}

inline double direct_product(const IdList& s, const DistanceMatrix& d) {
  double p = 1.0;
  for (Index a = 0; a < s.size(); ++a)
    for (Index b = a + 1; b < s.size(); ++b) p *= d(s[a], s[b]);
  return p;
}

}  // namespace oracle
