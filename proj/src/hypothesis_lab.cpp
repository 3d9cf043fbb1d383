#include "metric_gauge/hypothesis_lab.hpp"

#include "metric_gauge/parallel.hpp"

#include <memory>
#include <numeric>

namespace metric_gauge {

DemoFamily parse_demo_family(const std::string& name) {
  if (name == "doubling_line") return DemoFamily::DoublingLine;
  if (name == "shift_shrinking") return DemoFamily::ShiftShrinking;
  if (name == "scaling_grid") return DemoFamily::ScalingGrid;
  throw BadFamily("unknown demo family '" + name +
                  "' (expected doubling_line, shift_shrinking or scaling_grid)");
}

const char* to_string(DemoFamily family) {
  switch (family) {
    case DemoFamily::DoublingLine: return "doubling_line";
    case DemoFamily::ShiftShrinking: return "shift_shrinking";
    case DemoFamily::ScalingGrid: return "scaling_grid";
  }
  return "unknown";
}

namespace {

SpacePtr integer_line(Index count) {
  std::vector<double> values(count);
  std::iota(values.begin(), values.end(), 0.0);
  return std::make_shared<const MetricSpace>(make_builtin(LinePoints{std::move(values)}));
}

MapSample scaled_line(SpacePtr line, Index domain_size, Index factor) {
  IdList domain(domain_size), image(domain_size);
  for (Index k = 0; k < domain_size; ++k) {
    domain[k] = k;
    image[k] = factor * k;
  }
  return MapSample(std::move(line), std::move(domain), std::move(image));
}

}  // namespace

MapSample make_demo_map(DemoFamily family, Index n) {
  if (n < kMinDemoSize) throw BadFamily("demo size must be at least 3");
  switch (family) {
    case DemoFamily::DoublingLine:
      return scaled_line(integer_line(n), (n - 1) / 2 + 1, 2);
    case DemoFamily::ScalingGrid:
      return scaled_line(integer_line(3 * n + 1), n, 3);
    case DemoFamily::ShiftShrinking: {
      auto space = std::make_shared<const MetricSpace>(make_builtin(ShrinkingShiftFamily{n}));
      IdList domain(n - 1), image(n - 1);
      for (Index k = 0; k + 1 < n; ++k) {
        domain[k] = k;
        image[k] = k + 1;
      }
      return MapSample(std::move(space), std::move(domain), std::move(image));
    }
  }
  throw BadFamily("unknown demo family");
}

DemoResult run_demo(DemoFamily family, Index n, const CertifyConfig& config) {
  const MapSample map = make_demo_map(family, n);
  const double diam = map.space().diameter();
  const EpsilonSchedule schedule = default_schedule(diam, default_tol_iso(diam));

  DemoResult result;
  result.family = family;
  result.n = n;
  result.margin = check_expansive(map);
  result.defect = isometry_defect(map);
  result.density_gap = map.domain().density_gap();
  result.reports.resize(schedule.size());

  CertifyConfig inner = config;
  const unsigned outer = std::max(1u, config.workers);
  if (outer > 1) inner.workers = 1;
  parallel_for(schedule.size(), outer, [&](std::size_t k) {
    result.reports[k] = certify_at_epsilon(map, schedule.values()[k], inner);
  });

  result.flagged_at_every_epsilon = true;
  for (const auto& r : result.reports) {
    result.n_eps_trace.emplace_back(r.epsilon, r.packing_x.n_eps);
    if (r.hypotheses_clear()) result.flagged_at_every_epsilon = false;
  }
  if (!result.flagged_at_every_epsilon && result.defect > 0.0)
    throw TheoremContradicted(std::string("demo ") + to_string(family) +
                              " cleared every hypothesis flag at some scale");
  return result;
}

std::vector<DemoSweepRow> demo_sweep(DemoFamily family, Index max_n) {
  std::vector<DemoSweepRow> rows;
  for (Index n = kMinDemoSize; n <= max_n; ++n) {
    const MapSample map = make_demo_map(family, n);
    rows.push_back({n, check_expansive(map), isometry_defect(map), map.domain().density_gap()});
  }
  return rows;
}

}  // namespace metric_gauge
