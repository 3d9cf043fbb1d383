#include "metric_gauge/nets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace metric_gauge {

namespace {

void require_positive_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw std::invalid_argument("epsilon must be positive and finite");
}

void require_ids(const IdList& ids, const MetricSpace& space) {
  for (Index id : ids)
    if (!space.contains(id))
      throw UnknownIdError("id " + std::to_string(id) + " is not a point of the space");
}

}  // namespace

SeparationGraph separation_graph(const MetricSpace& space, double epsilon) {
  const Index n = space.size();
  SeparationGraph graph(n, Bitset(n));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (i != j && space(i, j) > epsilon) graph[i].set(j);
  return graph;
}

bool is_separated(const IdList& members, double epsilon, const MetricSpace& space) {
  require_ids(members, space);
  for (Index a = 0; a < members.size(); ++a)
    for (Index b = a + 1; b < members.size(); ++b)
      if (!(space(members[a], members[b]) > epsilon)) return false;
  return true;
}

SeparatedSet greedy_separated(const MetricSpace& space, double epsilon, Index start) {
  require_positive_epsilon(epsilon);
  if (!space.contains(start))
    throw UnknownIdError("start id " + std::to_string(start) + " is not a point of the space");

  const Index n = space.size();
  std::vector<double> to_set(n, std::numeric_limits<double>::infinity());
  std::vector<bool> chosen(n, false);
  IdList members{start};
  chosen[start] = true;
  for (Index i = 0; i < n; ++i) to_set[i] = space(i, start);

  while (true) {
    Index far = n;
    double far_dist = -1.0;
    for (Index i = 0; i < n; ++i)
      if (!chosen[i] && to_set[i] > far_dist) {
        far_dist = to_set[i];
        far = i;
      }
    if (far == n || !(far_dist > epsilon)) break;
    chosen[far] = true;
    members.push_back(far);
    for (Index i = 0; i < n; ++i) to_set[i] = std::min(to_set[i], space(i, far));
  }
  std::sort(members.begin(), members.end());
  return {epsilon, std::move(members)};
}

std::size_t greedy_color_bound(const SeparationGraph& graph, const Bitset& candidates) {
  std::size_t colors = 0;
  Bitset uncolored = candidates;
  while (uncolored.any()) {
    ++colors;
    Bitset available = uncolored;
    while (available.any()) {
      const std::size_t v = available.first();
      available.reset(v);
      uncolored.reset(v);
      available.subtract(graph[v]);
    }
  }
  return colors;
}

namespace {

// Depth-first maximum clique search visiting cliques as increasing id
// sequences, so the first maximum clique reached is the lexicographically
// smallest one. Nodes are pruned only when they cannot strictly beat the
// incumbent.
class MaxCliqueSearch {
 public:
  MaxCliqueSearch(const SeparationGraph& graph, std::uint64_t budget)
      : graph_(graph), budget_(budget) {}

  void run() {
    const Index n = graph_.size();
    best_ = {0};
    Bitset remaining(n);
    remaining.set_all();
    for (Index v = 0; v < n; ++v) {
      // Cliques whose smallest member is >= v live in `remaining`.
      if (greedy_color_bound(graph_, remaining) <= best_.size()) {
        remaining_bound_ = best_.size();
        return;
      }
      current_.push_back(v);
      Bitset next = remaining & graph_[v];
      expand(next);
      current_.pop_back();
      if (aborted_) {
        remaining_bound_ = std::max(best_.size(), greedy_color_bound(graph_, remaining));
        return;
      }
      remaining.reset(v);
    }
    remaining_bound_ = best_.size();
  }

  const IdList& best() const noexcept { return best_; }
  bool aborted() const noexcept { return aborted_; }
  std::size_t upper_bound() const noexcept { return remaining_bound_; }
  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  void expand(Bitset candidates) {
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    if (!candidates.any()) {
      if (current_.size() > best_.size()) best_ = current_;
      return;
    }
    if (current_.size() + greedy_color_bound(graph_, candidates) <= best_.size()) return;

    for (Index v = candidates.first(); v < candidates.size(); v = candidates.next(v)) {
      if (current_.size() + candidates.count() <= best_.size()) return;
      current_.push_back(v);
      expand(candidates & graph_[v]);
      current_.pop_back();
      if (aborted_) return;
      candidates.reset(v);
    }
  }

  const SeparationGraph& graph_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  IdList current_;
  IdList best_;
  std::size_t remaining_bound_ = 0;
};

}  // namespace

PackingResult max_separated_exact(const MetricSpace& space, double epsilon, std::uint64_t budget) {
  require_positive_epsilon(epsilon);
  const SeparationGraph graph = separation_graph(space, epsilon);
  MaxCliqueSearch search(graph, budget);
  search.run();

  PackingResult result;
  result.epsilon = epsilon;
  result.exact = !search.aborted();
  result.nodes = search.nodes();
  IdList witness = search.best();
  if (search.aborted()) {
    SeparatedSet greedy = greedy_separated(space, epsilon, 0);
    if (greedy.size() > witness.size()) witness = std::move(greedy.members);
  }
  result.n_eps = witness.size();
  result.witness = {epsilon, std::move(witness)};
  result.upper_bound = result.exact ? result.n_eps : std::max(result.n_eps, search.upper_bound());
  return result;
}

CliqueQuery find_clique_of_size(const SeparationGraph& graph, Index size, const IdList& order,
                                std::uint64_t node_limit) {
  CliqueQuery query;
  if (size == 0) return query;
  const Index n = graph.size();

  IdList current;
  bool found = false;

  // Candidates are kept in visiting order.
  auto dfs = [&](auto&& self, const IdList& candidates) -> void {
    if (++query.nodes > node_limit) {
      query.exhausted = true;
      return;
    }
    if (current.size() == size) {
      found = true;
      return;
    }
    if (current.size() + candidates.size() < size) return;
    Bitset cand_bits(n);
    for (Index v : candidates) cand_bits.set(v);
    if (current.size() + greedy_color_bound(graph, cand_bits) < size) return;
    for (Index a = 0; a < candidates.size(); ++a) {
      if (current.size() + (candidates.size() - a) < size) return;
      const Index v = candidates[a];
      IdList next;
      for (Index b = a + 1; b < candidates.size(); ++b)
        if (graph[v].test(candidates[b])) next.push_back(candidates[b]);
      current.push_back(v);
      self(self, next);
      if (found || query.exhausted) return;
      current.pop_back();
    }
  };

  IdList start;
  for (Index v : order)
    if (v < n) start.push_back(v);
  dfs(dfs, start);
  if (found) {
    query.exhausted = false;
    std::sort(current.begin(), current.end());
    query.clique = std::move(current);
  }
  return query;
}

Cover greedy_cover(const MetricSpace& space, double epsilon) {
  require_positive_epsilon(epsilon);
  const Index n = space.size();
  std::vector<bool> covered(n, false);
  Cover cover{epsilon, {}};

  auto fits = [&](const IdList& cluster, Index p) {
    for (Index q : cluster)
      if (space(p, q) > epsilon) return false;
    return true;
  };

  for (Index seed = 0; seed < n; ++seed) {
    if (covered[seed]) continue;
    IdList cluster{seed};
    covered[seed] = true;

    // Ball of radius eps/2 around the seed, nearest first. The explicit
    // pairwise check keeps the diameter <= eps even when the triangle
    // inequality only holds up to tol_metric.
    IdList ball;
    for (Index p = 0; p < n; ++p)
      if (!covered[p] && space(seed, p) <= 0.5 * epsilon) ball.push_back(p);
    std::stable_sort(ball.begin(), ball.end(),
                     [&](Index a, Index b) { return space(seed, a) < space(seed, b); });
    for (Index p : ball)
      if (fits(cluster, p)) {
        cluster.push_back(p);
        covered[p] = true;
      }

    // Extension pass: absorb anything else that keeps the diameter <= eps.
    for (Index p = 0; p < n; ++p)
      if (!covered[p] && fits(cluster, p)) {
        cluster.push_back(p);
        covered[p] = true;
      }

    std::sort(cluster.begin(), cluster.end());
    cover.clusters.push_back(std::move(cluster));
  }
  return cover;
}

double covering_check(const SeparatedSet& net, const MetricSpace& space) {
  if (net.members.empty()) throw std::invalid_argument("covering check of an empty net");
  require_ids(net.members, space);
  double radius = 0.0;
  for (Index y = 0; y < space.size(); ++y) {
    double nearest = std::numeric_limits<double>::infinity();
    for (Index x : net.members) nearest = std::min(nearest, space(y, x));
    radius = std::max(radius, nearest);
  }
  return radius;
}

double set_diameter(const IdList& members, const MetricSpace& space) {
  require_ids(members, space);
  double diam = 0.0;
  for (Index a = 0; a < members.size(); ++a)
    for (Index b = a + 1; b < members.size(); ++b) diam = std::max(diam, space(members[a], members[b]));
  return diam;
}

}  // namespace metric_gauge
