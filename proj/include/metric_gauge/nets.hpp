#pragma once

#include "metric_gauge/bitset.hpp"
#include "metric_gauge/metric_space.hpp"

#include <cstdint>
#include <vector>

namespace metric_gauge {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// Point ids whose pairwise distances all exceed epsilon (strictly).
struct SeparatedSet {
  double epsilon = 0.0;
  IdList members;  // sorted

  Index size() const noexcept { return members.size(); }
};

struct PackingResult {
  double epsilon = 0.0;
  Index n_eps = 0;
  SeparatedSet witness;
  bool exact = false;
  /// Valid upper bound on the packing number; equals n_eps when exact.
  Index upper_bound = 0;
  std::uint64_t nodes = 0;
};

/// Partition of the points into clusters of diameter <= epsilon.
struct Cover {
  double epsilon = 0.0;
  std::vector<IdList> clusters;

  Index size() const noexcept { return clusters.size(); }
};

/// Adjacency rows of the graph with an edge i~j iff d(i,j) > epsilon.
using SeparationGraph = std::vector<Bitset>;

SeparationGraph separation_graph(const MetricSpace& space, double epsilon);

bool is_separated(const IdList& members, double epsilon, const MetricSpace& space);

/// Farthest-point insertion from `start`; the result is maximal (no point
/// can be added) but not necessarily maximum.
SeparatedSet greedy_separated(const MetricSpace& space, double epsilon, Index start = 0);

/// Packing number n_eps by maximum clique search on the separation graph.
/// Among maximum sets the lexicographically smallest is returned. If the
/// node budget runs out the best set found is returned with exact = false.
PackingResult max_separated_exact(const MetricSpace& space, double epsilon,
                                  std::uint64_t budget = kDefaultBudget);

Cover greedy_cover(const MetricSpace& space, double epsilon);

/// max over points y of min over net members x of d(y, x).
double covering_check(const SeparatedSet& net, const MetricSpace& space);

double set_diameter(const IdList& members, const MetricSpace& space);

// Clique search primitives shared with the gauge module.

/// Number of colours used by sequential greedy colouring of `candidates`
/// in id order; an upper bound on the clique number of that vertex set.
std::size_t greedy_color_bound(const SeparationGraph& graph, const Bitset& candidates);

struct CliqueQuery {
  IdList clique;  // sorted; empty when none was found
  std::uint64_t nodes = 0;
  bool exhausted = false;  // node_limit hit before the search finished
};

/// Depth-first search for any clique of exactly `size` vertices, visiting
/// vertices in `order`. With the natural order the first clique found is
/// the lexicographically smallest one.
CliqueQuery find_clique_of_size(const SeparationGraph& graph, Index size,
                                const IdList& order, std::uint64_t node_limit);

}  // namespace metric_gauge
