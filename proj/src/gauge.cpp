#include "metric_gauge/gauge.hpp"

#include "metric_gauge/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace metric_gauge {

const char* to_string(GaugeMode mode) {
  switch (mode) {
    case GaugeMode::Exact: return "exact";
    case GaugeMode::UpperBounded: return "upper_bounded";
    case GaugeMode::Heuristic: return "heuristic";
  }
  return "unknown";
}

double log_gauge(const IdList& members, const MetricSpace& space) {
  double sum = 0.0;
  for (Index a = 0; a < members.size(); ++a)
    for (Index b = a + 1; b < members.size(); ++b) sum += std::log(space(members[a], members[b]));
  return sum;
}

double log_gauge(const SeparatedSet& set, const MetricSpace& space) {
  return log_gauge(set.members, space);
}

double log_gauge_ceiling(Index n, double diameter) {
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n > 0 ? n - 1 : 0);
  return pairs * std::log(std::max(1.0, diameter));
}

double gauge_tie_tolerance(double log_gauge) { return 1e-12 * std::max(1.0, std::abs(log_gauge)); }

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_search_inputs(const MetricSpace& space, double epsilon, Index require_size) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw std::invalid_argument("epsilon must be positive and finite");
  if (require_size == 0) throw std::invalid_argument("required set size must be at least 1");
  if (require_size > space.size())
    throw NoSetOfRequiredSize("no eps-separated set of size " + std::to_string(require_size) +
                              " in a space of " + std::to_string(space.size()) + " points");
}

bool beats(double candidate, double incumbent) {
  return candidate > incumbent + gauge_tie_tolerance(incumbent);
}

/// Precomputed ln d(i, j) and per-point max ln d(i, .).
struct LogDistances {
  explicit LogDistances(const MetricSpace& space)
      : table(space.distances().array().log().matrix()), row_max(space.size(), kNegInf) {
    for (Index i = 0; i < space.size(); ++i)
      for (Index j = 0; j < space.size(); ++j)
        if (i != j) row_max[i] = std::max(row_max[i], table(i, j));
  }
  double operator()(Index i, Index j) const { return table(i, j); }

  Eigen::MatrixXd table;
  std::vector<double> row_max;
};

// Depth-first over increasing id sequences, so among (near-)equal gauges
// the lexicographically smallest set is kept.
class GaugeSearch {
 public:
  GaugeSearch(const MetricSpace& space, const SeparationGraph& graph, Index size,
              std::uint64_t budget, IdList incumbent)
      : space_(space), graph_(graph), logd_(space), size_(size), budget_(budget),
        best_set_(std::move(incumbent)), best_(log_gauge(best_set_, space)) {}

  void run() {
    IdList all(space_.size());
    std::iota(all.begin(), all.end(), Index{0});
    expand(all, size_);
  }

  bool aborted() const noexcept { return aborted_; }
  std::uint64_t nodes() const noexcept { return nodes_; }
  const IdList& best_set() const noexcept { return best_set_; }
  double best() const noexcept { return best_; }
  double frontier_upper() const noexcept { return frontier_; }

 private:
  // Admissible: chosen pairs are exact; each new point contributes at most
  // its summed log-distance to the chosen points (top-r over candidates);
  // each new-new pair contributes at most the largest log-distance from
  // any candidate.
  double bound(const IdList& candidates, Index from, Index remaining) const {
    if (remaining == 0) return fixed_;
    if (candidates.size() - from < remaining) return kNegInf;
    std::vector<double> gains;
    gains.reserve(candidates.size() - from);
    double pair_cap = kNegInf;
    for (Index a = from; a < candidates.size(); ++a) {
      const Index c = candidates[a];
      double g = 0.0;
      for (Index x : chosen_) g += logd_(x, c);
      gains.push_back(g);
      pair_cap = std::max(pair_cap, logd_.row_max[c]);
    }
    std::partial_sort(gains.begin(), gains.begin() + static_cast<std::ptrdiff_t>(remaining),
                      gains.end(), std::greater<>());
    double total = fixed_;
    for (Index r = 0; r < remaining; ++r) total += gains[r];
    const double new_pairs = 0.5 * static_cast<double>(remaining) * static_cast<double>(remaining - 1);
    if (new_pairs > 0) total += new_pairs * pair_cap;
    return total;
  }

  bool prunable(double b) const {
    return b + 1e-12 * (1.0 + std::abs(b)) <= best_ + gauge_tie_tolerance(best_);
  }

  void expand(const IdList& candidates, Index remaining) {
    if (++nodes_ > budget_) {
      aborted_ = true;
      frontier_ = std::max(frontier_, bound(candidates, 0, remaining));
      return;
    }
    if (remaining == 0) {
      const double g = log_gauge(chosen_, space_);
      if (beats(g, best_)) {
        best_ = g;
        best_set_ = chosen_;
      }
      return;
    }
    if (prunable(bound(candidates, 0, remaining))) return;

    for (Index a = 0; a < candidates.size(); ++a) {
      if (candidates.size() - a < remaining) return;
      const Index v = candidates[a];
      IdList next;
      for (Index b = a + 1; b < candidates.size(); ++b)
        if (graph_[v].test(candidates[b])) next.push_back(candidates[b]);

      const double saved = fixed_;
      for (Index x : chosen_) fixed_ += logd_(x, v);
      chosen_.push_back(v);
      expand(next, remaining - 1);
      chosen_.pop_back();
      fixed_ = saved;

      if (aborted_) {
        frontier_ = std::max(frontier_, bound(candidates, a, remaining));
        return;
      }
    }
  }

  const MetricSpace& space_;
  const SeparationGraph& graph_;
  LogDistances logd_;
  Index size_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;

  IdList chosen_;
  double fixed_ = 0.0;
  IdList best_set_;
  double best_;
  double frontier_ = kNegInf;
};

}  // namespace

GaugeResult max_gauge(const MetricSpace& space, double epsilon, Index require_size,
                      std::uint64_t budget) {
  require_search_inputs(space, epsilon, require_size);
  const SeparationGraph graph = separation_graph(space, epsilon);

  IdList natural(space.size());
  std::iota(natural.begin(), natural.end(), Index{0});
  CliqueQuery first = find_clique_of_size(graph, require_size, natural, budget);
  if (first.clique.empty()) {
    if (first.exhausted)
      throw GaugeBudgetExhausted("budget exhausted before any set of size " +
                                 std::to_string(require_size) + " was found");
    throw NoSetOfRequiredSize("no eps-separated set of size " + std::to_string(require_size));
  }

  const std::uint64_t left = budget > first.nodes ? budget - first.nodes : 0;
  GaugeSearch search(space, graph, require_size, left, first.clique);
  search.run();

  GaugeResult result;
  result.set = {epsilon, search.best_set()};
  result.log_gauge = search.best();
  result.nodes = first.nodes + search.nodes();
  if (search.aborted()) {
    result.mode = GaugeMode::UpperBounded;
    result.log_upper = std::max(search.best(), search.frontier_upper());
  } else {
    result.mode = GaugeMode::Exact;
    result.log_upper = search.best();
  }
  return result;
}

namespace {

struct RestartOutcome {
  IdList set;
  double log_gauge = kNegInf;
  std::uint64_t nodes = 0;
  bool exhausted = false;
};

RestartOutcome local_search_restart(const MetricSpace& space, const SeparationGraph& graph,
                                    Index size, std::uint64_t seed, Index restart,
                                    std::uint64_t node_limit) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::mt19937_64 rng(seq);
  IdList order(space.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::shuffle(order.begin(), order.end(), rng);

  RestartOutcome out;
  CliqueQuery init = find_clique_of_size(graph, size, order, node_limit);
  out.nodes = init.nodes;
  out.exhausted = init.exhausted;
  if (init.clique.empty()) return out;

  IdList set = std::move(init.clique);
  double g = log_gauge(set, space);
  std::vector<bool> member(space.size(), false);
  for (Index v : set) member[v] = true;

  // Best-improvement single swaps; the gauge strictly increases, so this
  // terminates, but cap the rounds anyway.
  const std::size_t max_rounds = 16 * space.size() * size + 16;
  for (std::size_t round = 0; round < max_rounds; ++round) {
    double best_delta = gauge_tie_tolerance(g);
    Index best_slot = size, best_in = space.size();
    for (Index slot = 0; slot < size; ++slot) {
      const Index out_v = set[slot];
      double loss = 0.0;
      for (Index x : set)
        if (x != out_v) loss += std::log(space(x, out_v));
      for (Index c = 0; c < space.size(); ++c) {
        if (member[c]) continue;
        double gain = 0.0;
        bool ok = true;
        for (Index x : set) {
          if (x == out_v) continue;
          if (!graph[c].test(x)) {
            ok = false;
            break;
          }
          gain += std::log(space(x, c));
        }
        if (!ok) continue;
        const double delta = gain - loss;
        if (delta > best_delta) {
          best_delta = delta;
          best_slot = slot;
          best_in = c;
        }
      }
    }
    if (best_slot == size) break;
    member[set[best_slot]] = false;
    member[best_in] = true;
    set[best_slot] = best_in;
    std::sort(set.begin(), set.end());
    const double next_g = log_gauge(set, space);
    if (!(next_g > g)) break;
    g = next_g;
  }
  out.set = std::move(set);
  out.log_gauge = g;
  return out;
}

}  // namespace

GaugeResult max_gauge_local(const MetricSpace& space, double epsilon, Index require_size,
                            Index restarts, std::uint64_t seed, unsigned workers,
                            std::uint64_t budget) {
  require_search_inputs(space, epsilon, require_size);
  if (restarts == 0) throw std::invalid_argument("restarts must be at least 1");
  const SeparationGraph graph = separation_graph(space, epsilon);
  const std::uint64_t per_restart = std::max<std::uint64_t>(1000, budget / restarts);

  std::vector<RestartOutcome> outcomes(restarts);
  parallel_for(restarts, workers, [&](std::size_t r) {
    outcomes[r] = local_search_restart(space, graph, require_size, seed, r, per_restart);
  });

  GaugeResult result;
  result.mode = GaugeMode::Heuristic;
  result.log_gauge = kNegInf;
  bool any = false, exhausted = false;
  for (const auto& o : outcomes) {
    result.nodes += o.nodes;
    exhausted = exhausted || o.exhausted;
    if (o.set.empty()) continue;
    const bool better = !any || beats(o.log_gauge, result.log_gauge) ||
                        (!beats(result.log_gauge, o.log_gauge) && o.set < result.set.members);
    if (better) {
      result.set = {epsilon, o.set};
      result.log_gauge = o.log_gauge;
      any = true;
    }
  }
  if (!any) {
    if (exhausted)
      throw GaugeBudgetExhausted("local search found no set of size " + std::to_string(require_size));
    throw NoSetOfRequiredSize("no eps-separated set of size " + std::to_string(require_size));
  }
  return result;
}

NearMaximality near_maximality_certificate(const GaugeResult& candidate, double epsilon) {
  if (candidate.mode == GaugeMode::Heuristic || !candidate.log_upper)
    throw HeuristicModeRejected("near-maximality needs a certified upper bound on the gauge");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  NearMaximality cert;
  cert.factor = std::exp(*candidate.log_upper - candidate.log_gauge);
  cert.pass = cert.factor < 1.0 + epsilon;
  return cert;
}

}  // namespace metric_gauge
