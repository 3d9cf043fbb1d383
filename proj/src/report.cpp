#include "metric_gauge/report.hpp"

#include <cmath>

namespace metric_gauge {

using nlohmann::json;

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json ids_to_json(const IdList& ids, const MetricSpace& space) {
  json out = json::array();
  for (Index id : ids) out.push_back(id);
  if (!space.has_labels()) return {{"ids", out}};
  json labels = json::array();
  for (Index id : ids) labels.push_back(space.label(id));
  return {{"ids", out}, {"labels", labels}};
}

json space_summary(const MetricSpace& space) {
  return {{"name", space.name()},
          {"points", space.size()},
          {"diameter", number(space.diameter())},
          {"worst_triangle_slack", number(space.worst_triangle_slack())}};
}

json to_json(const SeparatedSet& set, const MetricSpace& space) {
  json j = ids_to_json(set.members, space);
  j["epsilon"] = number(set.epsilon);
  j["size"] = set.size();
  return j;
}

json to_json(const PackingResult& r, const MetricSpace& space) {
  return {{"epsilon", number(r.epsilon)}, {"n_eps", r.n_eps},
          {"exact", r.exact},             {"upper_bound", r.upper_bound},
          {"nodes", r.nodes},             {"witness", to_json(r.witness, space)}};
}

json to_json(const Cover& cover, const MetricSpace& space) {
  json clusters = json::array();
  for (const auto& c : cover.clusters) clusters.push_back(ids_to_json(c, space));
  return {{"epsilon", number(cover.epsilon)}, {"size", cover.size()}, {"clusters", clusters}};
}

json to_json(const GaugeResult& r, const MetricSpace& space) {
  return {{"set", to_json(r.set, space)},
          {"log_gauge", number(r.log_gauge)},
          {"mode", to_string(r.mode)},
          {"log_upper", r.log_upper ? number(*r.log_upper) : json(nullptr)},
          {"nodes", r.nodes}};
}

json to_json(const NearMaximality& cert) {
  return {{"factor", number(cert.factor)}, {"pass", cert.pass}};
}

json to_json(const CertReport& r, const MetricSpace& space) {
  json flags = json::array();
  for (auto f : r.flags) flags.push_back(to_string(f));
  json pairs = json::array();
  for (const auto& p : r.pairs)
    pairs.push_back({{"y", p.y},
                     {"z", p.z},
                     {"witness_y", p.witness_y},
                     {"witness_z", p.witness_z},
                     {"distance", number(p.distance)},
                     {"observed", number(p.observed)},
                     {"net_image_bound", number(p.net_image_bound)},
                     {"chain_bound", number(p.chain_bound)}});
  return {{"epsilon", number(r.epsilon)},
          {"density_gap", number(r.density_gap)},
          {"expansive_margin", number(r.expansive_margin)},
          {"n_eps_x", r.packing_x.n_eps},
          {"n_eps_y", r.packing_y.n_eps},
          {"packing_x", to_json(r.packing_x, space)},
          {"packing_y", to_json(r.packing_y, space)},
          {"net", to_json(r.net, space)},
          {"gauge_x", r.gauge_x ? to_json(*r.gauge_x, space) : json(nullptr)},
          {"net_gauge", to_json(r.net_gauge, space)},
          {"near_maximality", r.near_maximality ? to_json(*r.near_maximality) : json(nullptr)},
          {"net_image", ids_to_json(r.net_image, space)},
          {"image_separated", r.image_separated},
          {"pair_ratio_bound", number(r.pair_ratio_bound)},
          {"pair_ratio_violations", r.pair_ratio_violations},
          {"uncovered_points", r.uncovered_points},
          {"per_pair_bounds", pairs},
          {"max_excess", number(r.max_excess)},
          {"bound_excess", number(r.bound_excess)},
          {"chain_violations", r.chain_violations},
          {"hypothesis_flags", flags}};
}

json to_json(const IsometryCertificate& cert, const MetricSpace& space) {
  json reports = json::array();
  for (const auto& r : cert.reports) reports.push_back(to_json(r, space));
  return {{"verdict", to_string(cert.verdict)},
          {"tol_iso", number(cert.tol_iso)},
          {"expansive_margin", number(cert.expansive_margin)},
          {"direct_defect", number(cert.direct_defect)},
          {"passing_epsilon", cert.passing_epsilon ? number(*cert.passing_epsilon) : json(nullptr)},
          {"reports", reports}};
}

json to_json(const DemoResult& demo) {
  json trace = json::array();
  for (const auto& [eps, n] : demo.n_eps_trace) trace.push_back({{"epsilon", number(eps)}, {"n_eps", n}});
  const MapSample map = make_demo_map(demo.family, demo.n);
  json reports = json::array();
  for (const auto& r : demo.reports) reports.push_back(to_json(r, map.space()));
  return {{"family", to_string(demo.family)},
          {"n", demo.n},
          {"space", space_summary(map.space())},
          {"margin", number(demo.margin)},
          {"defect", number(demo.defect)},
          {"density_gap", number(demo.density_gap)},
          {"n_eps_trace", trace},
          {"flagged_at_every_epsilon", demo.flagged_at_every_epsilon},
          {"reports", reports}};
}

}  // namespace metric_gauge
