// metric-gauge: command-line front end.
//
//   metric-gauge validate SPACE
//   metric-gauge nets     SPACE  --epsilon R | --schedule "start,ratio,count"
//   metric-gauge gauge    SPACE  --epsilon R | --schedule ...  [--exact]
//   metric-gauge certify  SPACE SUBSET MAP  [--schedule ...] [--tol-iso R]
//   metric-gauge demo     FAMILY N
//
// Exit codes: 0 pass, 1 fail, 2 invalid input, 3 hypotheses unmet.

#include "metric_gauge/certifier.hpp"
#include "metric_gauge/gauge.hpp"
#include "metric_gauge/hypothesis_lab.hpp"
#include "metric_gauge/io.hpp"
#include "metric_gauge/nets.hpp"
#include "metric_gauge/parallel.hpp"
#include "metric_gauge/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace mg = metric_gauge;
using nlohmann::json;

namespace {

enum ExitCode : int { kPass = 0, kFail = 1, kInvalidInput = 2, kHypothesesUnmet = 3 };

struct RunConfig {
  double tol_metric = mg::kDefaultTolMetric;
  std::optional<double> tol_iso;
  std::optional<double> epsilon;
  std::string schedule;
  std::uint64_t seed = 0;
  std::uint64_t budget = mg::kDefaultBudget;
  std::string format = "json";
  std::string out;
  bool exact = false;
  mg::Index restarts = mg::kDefaultRestarts;
  mg::Index start = 0;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string join_ids(const mg::IdList& ids) {
  std::string s;
  for (std::size_t k = 0; k < ids.size(); ++k) s += (k ? " " : "") + std::to_string(ids[k]);
  return s;
}

void validate_config(const RunConfig& cfg) {
  if (!(cfg.tol_metric > 0.0)) throw UsageError("--tol-metric must be positive");
  if (cfg.tol_iso && !(*cfg.tol_iso > 0.0)) throw UsageError("--tol-iso must be positive");
  if (cfg.epsilon && !cfg.schedule.empty())
    throw UsageError("--epsilon and --schedule are mutually exclusive");
  if (cfg.epsilon && !(*cfg.epsilon > 0.0)) throw UsageError("--epsilon must be positive");
  if (cfg.format != "json" && cfg.format != "csv") throw UsageError("--format must be json or csv");
  if (cfg.restarts == 0) throw UsageError("--restarts must be at least 1");
}

std::optional<mg::EpsilonSchedule> parse_schedule(const RunConfig& cfg) {
  if (cfg.epsilon) return mg::EpsilonSchedule({*cfg.epsilon});
  if (cfg.schedule.empty()) return std::nullopt;
  std::vector<std::string> parts;
  std::stringstream ss(cfg.schedule);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (parts.size() != 3) throw UsageError("--schedule expects \"start,ratio,count\"");
  try {
    const double start = std::stod(parts[0]);
    const double ratio = std::stod(parts[1]);
    const long count = std::stol(parts[2]);
    if (!(start > 0.0) || count < 1) throw UsageError("--schedule needs start > 0 and count >= 1");
    return mg::EpsilonSchedule::geometric(start, ratio, static_cast<mg::Index>(count));
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad --schedule: ") + e.what());
  } catch (const std::out_of_range&) {
    throw UsageError("bad --schedule: value out of range");
  }
}

json config_json(const RunConfig& cfg, const std::string& command) {
  json j = {{"command", command},
            {"tol_metric", cfg.tol_metric},
            {"tol_iso", cfg.tol_iso ? json(*cfg.tol_iso) : json(nullptr)},
            {"epsilon", cfg.epsilon ? json(*cfg.epsilon) : json(nullptr)},
            {"schedule", cfg.schedule.empty() ? json(nullptr) : json(cfg.schedule)},
            {"seed", cfg.seed},
            {"budget", cfg.budget},
            {"format", cfg.format},
            {"exact", cfg.exact},
            {"restarts", cfg.restarts},
            {"start", cfg.start}};
  return j;
}

class Output {
 public:
  explicit Output(const RunConfig& cfg) : cfg_(cfg) {}

  void json_report(const json& report) { text_ = report.dump(2) + "\n"; }
  void csv(const std::string& text) { text_ = text; }

  void flush() const {
    if (cfg_.out.empty()) {
      std::cout << text_;
      return;
    }
    std::ofstream f(cfg_.out, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + cfg_.out + "'");
    f << text_;
  }

 private:
  const RunConfig& cfg_;
  std::string text_;
};

json error_json(const std::string& kind, const std::string& message) {
  return {{"kind", kind}, {"message", message}};
}

// ---------------------------------------------------------------- validate

int cmd_validate(const RunConfig& cfg, const std::string& space_path) {
  json report = {{"config", config_json(cfg, "validate")}, {"inputs", {{"space", space_path}}}};
  Output out(cfg);
  int code = kPass;
  std::string csv = "valid,points,diameter,worst_triangle_slack,error_kind,i,j,k,slack\n";
  try {
    const mg::MetricSpace space = mg::load_space(space_path, cfg.tol_metric);
    report["valid"] = true;
    report["space"] = mg::space_summary(space);
    csv += "true," + std::to_string(space.size()) + "," + fmt(space.diameter()) + "," +
           fmt(space.worst_triangle_slack()) + ",,,,,\n";
  } catch (const mg::ValidationError& e) {
    report["valid"] = false;
    json err = error_json(mg::to_string(e.kind()), e.what());
    err["i"] = e.i();
    err["j"] = e.j();
    err["k"] = e.k();
    err["slack"] = e.slack();
    report["error"] = err;
    csv += std::string("false,,,,") + mg::to_string(e.kind()) + "," + std::to_string(e.i()) + "," +
           std::to_string(e.j()) + "," + std::to_string(e.k()) + "," + fmt(e.slack()) + "\n";
    code = kInvalidInput;
  } catch (const std::exception& e) {
    report["valid"] = false;
    report["error"] = error_json("ParseError", e.what());
    csv += "false,,,,ParseError,,,,\n";
    code = kInvalidInput;
  }
  if (cfg.format == "csv")
    out.csv(csv);
  else
    out.json_report(report);
  out.flush();
  return code;
}

// ---------------------------------------------------------------- nets

int cmd_nets(const RunConfig& cfg, const std::string& space_path) {
  const auto schedule = parse_schedule(cfg);
  if (!schedule) throw UsageError("nets needs --epsilon or --schedule");
  const mg::MetricSpace space = mg::load_space(space_path, cfg.tol_metric);
  if (!space.contains(cfg.start)) throw UsageError("--start is not a point of the space");

  json results = json::array();
  std::string csv = "epsilon,n_eps,exact,upper_bound,greedy_size,cover_size,covering_radius,witness\n";
  for (double eps : schedule->values()) {
    const mg::PackingResult packing = mg::max_separated_exact(space, eps, cfg.budget);
    const mg::SeparatedSet greedy = mg::greedy_separated(space, eps, cfg.start);
    const mg::Cover cover = mg::greedy_cover(space, eps);
    const double radius = mg::covering_check(packing.witness, space);
    results.push_back({{"epsilon", eps},
                       {"packing", mg::to_json(packing, space)},
                       {"greedy", mg::to_json(greedy, space)},
                       {"greedy_covering_radius", mg::covering_check(greedy, space)},
                       {"cover", mg::to_json(cover, space)},
                       {"covering_radius", radius}});
    csv += fmt(eps) + "," + std::to_string(packing.n_eps) + "," + (packing.exact ? "true" : "false") +
           "," + std::to_string(packing.upper_bound) + "," + std::to_string(greedy.size()) + "," +
           std::to_string(cover.size()) + "," + fmt(radius) + "," + join_ids(packing.witness.members) +
           "\n";
  }
  Output out(cfg);
  if (cfg.format == "csv") {
    out.csv(csv);
  } else {
    out.json_report({{"config", config_json(cfg, "nets")},
                     {"inputs", {{"space", space_path}}},
                     {"space", mg::space_summary(space)},
                     {"results", results}});
  }
  out.flush();
  return kPass;
}

// ---------------------------------------------------------------- gauge

int cmd_gauge(const RunConfig& cfg, const std::string& space_path) {
  const auto schedule = parse_schedule(cfg);
  if (!schedule) throw UsageError("gauge needs --epsilon or --schedule");
  const mg::MetricSpace space = mg::load_space(space_path, cfg.tol_metric);

  json results = json::array();
  std::string csv = "epsilon,n_eps,mode,log_gauge,log_upper,factor,members\n";
  for (double eps : schedule->values()) {
    const mg::PackingResult packing = mg::max_separated_exact(space, eps, cfg.budget);
    const mg::GaugeResult g =
        cfg.exact ? mg::max_gauge(space, eps, packing.n_eps, cfg.budget)
                  : mg::max_gauge_local(space, eps, packing.n_eps, cfg.restarts, cfg.seed,
                                        mg::worker_count(), cfg.budget);
    json entry = {{"epsilon", eps},
                  {"packing", mg::to_json(packing, space)},
                  {"gauge", mg::to_json(g, space)},
                  {"log_gauge_ceiling", mg::log_gauge_ceiling(packing.n_eps, space.diameter())}};
    std::string factor;
    if (g.mode != mg::GaugeMode::Heuristic) {
      const auto cert = mg::near_maximality_certificate(g, eps);
      entry["near_maximality"] = mg::to_json(cert);
      factor = fmt(cert.factor);
    } else {
      entry["near_maximality"] = nullptr;
    }
    results.push_back(entry);
    csv += fmt(eps) + "," + std::to_string(packing.n_eps) + "," + mg::to_string(g.mode) + "," +
           fmt(g.log_gauge) + "," + (g.log_upper ? fmt(*g.log_upper) : "") + "," + factor + "," +
           join_ids(g.set.members) + "\n";
  }
  Output out(cfg);
  if (cfg.format == "csv") {
    out.csv(csv);
  } else {
    out.json_report({{"config", config_json(cfg, "gauge")},
                     {"inputs", {{"space", space_path}}},
                     {"space", mg::space_summary(space)},
                     {"results", results}});
  }
  out.flush();
  return kPass;
}

// ---------------------------------------------------------------- certify

mg::CertifyConfig certify_config(const RunConfig& cfg) {
  mg::CertifyConfig c;
  c.budget = cfg.budget;
  c.exact_net = cfg.exact;
  c.restarts = cfg.restarts;
  c.seed = cfg.seed;
  c.workers = mg::worker_count();
  return c;
}

int cmd_certify(const RunConfig& cfg, const std::string& space_path, const std::string& subset_path,
                const std::string& map_path) {
  auto space = std::make_shared<const mg::MetricSpace>(mg::load_space(space_path, cfg.tol_metric));
  const mg::SubsetSelection subset = mg::load_subset(subset_path, space);
  const mg::MapSample map = mg::load_map(map_path, space);
  if (map.domain().members() != subset.members())
    throw mg::InputError("map domain does not match the subset members");

  const double diam = space->diameter();
  const double tol_iso = cfg.tol_iso.value_or(mg::default_tol_iso(diam));
  const auto schedule = parse_schedule(cfg).value_or(mg::default_schedule(diam, tol_iso));

  json report = {{"config", config_json(cfg, "certify")},
                 {"inputs", {{"space", space_path}, {"subset", subset_path}, {"map", map_path}}},
                 {"space", mg::space_summary(*space)},
                 {"density_gap", subset.density_gap()}};
  json schedule_json = json::array();
  for (double e : schedule.values()) schedule_json.push_back(e);
  report["schedule"] = schedule_json;
  report["tol_iso"] = tol_iso;

  Output out(cfg);
  mg::IsometryCertificate cert;
  try {
    cert = mg::certify_isometry(map, schedule, tol_iso, certify_config(cfg));
  } catch (const mg::NotExpansive& e) {
    report["verdict"] = "FAIL";
    report["error"] = {{"kind", "NotExpansive"}, {"message", e.what()},
                       {"y", e.y()}, {"z", e.z()}, {"margin", e.margin()}};
    if (cfg.format == "csv")
      out.csv("verdict,error,y,z,margin\nFAIL,NotExpansive," + std::to_string(e.y()) + "," +
              std::to_string(e.z()) + "," + fmt(e.margin()) + "\n");
    else
      out.json_report(report);
    out.flush();
    return kFail;
  }

  if (cfg.format == "csv") {
    std::string csv =
        "epsilon,n_eps_x,n_eps_y,pair_ratio_bound,max_excess,bound_excess,chain_violations,flags,verdict\n";
    for (const auto& r : cert.reports) {
      std::string flags;
      for (std::size_t k = 0; k < r.flags.size(); ++k) flags += (k ? "|" : "") + std::string(mg::to_string(r.flags[k]));
      csv += fmt(r.epsilon) + "," + std::to_string(r.packing_x.n_eps) + "," +
             std::to_string(r.packing_y.n_eps) + "," + fmt(r.pair_ratio_bound) + "," +
             fmt(r.max_excess) + "," + fmt(r.bound_excess) + "," + std::to_string(r.chain_violations) +
             "," + flags + "," + mg::to_string(cert.verdict) + "\n";
    }
    out.csv(csv);
  } else {
    json c = mg::to_json(cert, *space);
    for (auto& [key, value] : c.items()) report[key] = value;
    out.json_report(report);
  }
  out.flush();
  switch (cert.verdict) {
    case mg::Verdict::Pass: return kPass;
    case mg::Verdict::Fail: return kFail;
    case mg::Verdict::HypothesesUnmet: return kHypothesesUnmet;
  }
  return kFail;
}

// ---------------------------------------------------------------- demo

int cmd_demo(const RunConfig& cfg, const std::string& family_name, long long n) {
  const mg::DemoFamily family = mg::parse_demo_family(family_name);
  if (n < static_cast<long long>(mg::kMinDemoSize)) throw UsageError("demo size N must be at least 3");
  const auto size = static_cast<mg::Index>(n);

  Output out(cfg);
  if (cfg.format == "csv") {
    std::string csv = "n,margin,defect,density_gap\n";
    for (const auto& row : mg::demo_sweep(family, size))
      csv += std::to_string(row.n) + "," + fmt(row.margin) + "," + fmt(row.defect) + "," +
             fmt(row.density_gap) + "\n";
    out.csv(csv);
    out.flush();
    return kPass;
  }
  mg::CertifyConfig c = certify_config(cfg);
  c.exact_net = true;
  const mg::DemoResult demo = mg::run_demo(family, size, c);
  json report = mg::to_json(demo);
  report["config"] = config_json(cfg, "demo");
  out.json_report(report);
  out.flush();
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Packing numbers, gauges and isometry certificates for finite metric spaces"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  double epsilon = 0.0, tol_iso = 0.0;
  auto* eps_opt = app.add_option("--epsilon", epsilon, "Single scale epsilon > 0");
  app.add_option("--schedule", cfg.schedule, "Geometric schedule \"start,ratio,count\"");
  app.add_option("--seed", cfg.seed, "Seed for local search");
  app.add_option("--budget", cfg.budget, "Branch-and-bound node budget");
  app.add_option("--tol-metric", cfg.tol_metric, "Triangle inequality tolerance");
  auto* tol_iso_opt = app.add_option("--tol-iso", tol_iso, "Isometry tolerance (default 1e-6 * diam)");
  app.add_flag("--exact", cfg.exact, "Exact branch and bound for gauge maximization");
  app.add_option("--format", cfg.format, "Report format: json or csv");
  app.add_option("--out", cfg.out, "Write the report to PATH instead of stdout");
  app.add_option("--restarts", cfg.restarts, "Local search restarts");
  app.add_option("--start", cfg.start, "Start point for greedy separation");

  std::string space_path, subset_path, map_path, family;
  long long demo_n = 0;

  auto* validate = app.add_subcommand("validate", "Check that a space file holds a metric");
  validate->add_option("space", space_path, "Space file (.json or .csv)")->required();
  auto* nets = app.add_subcommand("nets", "Packing number, greedy net, cover and covering radius");
  nets->add_option("space", space_path)->required();
  auto* gauge = app.add_subcommand("gauge", "Maximum-gauge separated set of maximal size");
  gauge->add_option("space", space_path)->required();
  auto* certify = app.add_subcommand("certify", "Certify that an expansive map is an isometry");
  certify->add_option("space", space_path)->required();
  certify->add_option("subset", subset_path)->required();
  certify->add_option("map", map_path)->required();
  auto* demo = app.add_subcommand("demo", "Run a counterexample family");
  demo->add_option("family", family, "doubling_line | shift_shrinking | scaling_grid")->required();
  demo->add_option("n", demo_n, "Size parameter N >= 3")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInvalidInput;
  }
  if (*eps_opt) cfg.epsilon = epsilon;
  if (*tol_iso_opt) cfg.tol_iso = tol_iso;

  try {
    validate_config(cfg);
    if (*validate) return cmd_validate(cfg, space_path);
    if (*nets) return cmd_nets(cfg, space_path);
    if (*gauge) return cmd_gauge(cfg, space_path);
    if (*certify) return cmd_certify(cfg, space_path, subset_path, map_path);
    if (*demo) return cmd_demo(cfg, family, demo_n);
  } catch (const mg::NotExpansive& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  } catch (const mg::TheoremContradicted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  return kInvalidInput;
}
