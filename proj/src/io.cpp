#include "metric_gauge/io.hpp"

#include <charconv>
#include <fstream>
#include <memory>
#include <sstream>

namespace metric_gauge {

using nlohmann::json;

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

namespace {

json parse_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("parse error in '" + path.string() + "': " + e.what());
  }
}

Index require_count(const json& obj, const char* key) {
  if (!obj.contains(key)) throw InputError(std::string("generator needs '") + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw InputError(std::string("generator field '") + key + "' must be a non-negative integer");
  return v.get<Index>();
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    cells.push_back(trim(line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return cells;
}

}  // namespace

GeneratorSpec generator_from_json(const json& gen) {
  if (!gen.is_object() || !gen.contains("type") || !gen.at("type").is_string())
    throw InputError("generator must be an object with a string 'type'");
  const std::string type = gen.at("type").get<std::string>();
  try {
    if (type == "line_points") {
      if (!gen.contains("values") || !gen.at("values").is_array())
        throw InputError("line_points needs a 'values' array");
      return LinePoints{gen.at("values").get<std::vector<double>>()};
    }
    if (type == "circle_geodesic") return CircleGeodesic{require_count(gen, "n")};
    if (type == "circle_chordal") return CircleChordal{require_count(gen, "n")};
    if (type == "torus_grid") return TorusGrid{require_count(gen, "a"), require_count(gen, "b")};
    if (type == "equilateral")
      return Equilateral{require_count(gen, "n"), gen.value("side", 1.0)};
    if (type == "shrinking_shift_family") return ShrinkingShiftFamily{require_count(gen, "n")};
  } catch (const json::exception& e) {
    throw InputError("bad generator parameters: " + std::string(e.what()));
  }
  throw BadSpecError("unknown generator type '" + type + "'");
}

json generator_to_json(const GeneratorSpec& spec) {
  struct {
    json operator()(const LinePoints& s) const { return {{"type", "line_points"}, {"values", s.values}}; }
    json operator()(const CircleGeodesic& s) const { return {{"type", "circle_geodesic"}, {"n", s.n}}; }
    json operator()(const CircleChordal& s) const { return {{"type", "circle_chordal"}, {"n", s.n}}; }
    json operator()(const TorusGrid& s) const { return {{"type", "torus_grid"}, {"a", s.a}, {"b", s.b}}; }
    json operator()(const Equilateral& s) const {
      return {{"type", "equilateral"}, {"n", s.n}, {"side", s.side}};
    }
    json operator()(const ShrinkingShiftFamily& s) const {
      return {{"type", "shrinking_shift_family"}, {"n", s.n}};
    }
  } v;
  return std::visit(v, spec);
}

MetricSpace space_from_json(const json& doc, double tol_metric) {
  if (!doc.is_object()) throw InputError("space file must hold a JSON object");
  const std::string name = doc.contains("name") && doc.at("name").is_string()
                               ? doc.at("name").get<std::string>()
                               : std::string{};
  if (doc.contains("generator")) {
    MetricSpace built = make_builtin(generator_from_json(doc.at("generator")));
    if (name.empty()) return built;
    return validate_metric(built.distances(), tol_metric, name, built.labels());
  }
  if (!doc.contains("matrix") || !doc.at("matrix").is_array())
    throw InputError("space file needs a 'matrix' array or a 'generator' object");

  const json& rows = doc.at("matrix");
  const Index n = rows.size();
  DistanceMatrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n)
      throw ValidationError(ValidationErrorKind::NotSquare,
                            "matrix row " + std::to_string(i) + " does not have " +
                                std::to_string(n) + " entries");
    for (Index j = 0; j < n; ++j) {
      if (!rows[i][j].is_number())
        throw InputError("matrix entry (" + std::to_string(i) + ", " + std::to_string(j) +
                         ") is not a number");
      m(i, j) = rows[i][j].get<double>();
    }
  }
  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    try {
      labels = doc.at("labels").get<std::vector<std::string>>();
    } catch (const json::exception&) {
      throw InputError("'labels' must be an array of strings");
    }
  }
  return validate_metric(m, tol_metric, name, std::move(labels));
}

MetricSpace space_from_csv(std::string_view text, double tol_metric, std::string name) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = trim(text.substr(pos, nl == text.npos ? text.npos : nl - pos));
    if (!line.empty()) lines.push_back(line);
    if (nl == text.npos) break;
    pos = nl + 1;
  }
  if (lines.empty()) throw InputError("empty CSV space file");

  std::vector<std::string> labels;
  for (auto cell : split_csv(lines.front())) labels.emplace_back(cell);
  const Index n = labels.size();
  if (lines.size() - 1 != n)
    throw ValidationError(ValidationErrorKind::NotSquare,
                          "CSV has " + std::to_string(n) + " labels but " +
                              std::to_string(lines.size() - 1) + " matrix rows");
  DistanceMatrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    const auto cells = split_csv(lines[i + 1]);
    if (cells.size() != n)
      throw ValidationError(ValidationErrorKind::NotSquare,
                            "CSV row " + std::to_string(i) + " does not have " + std::to_string(n) +
                                " entries");
    for (Index j = 0; j < n; ++j) {
      double v = 0.0;
      const auto* begin = cells[j].data();
      const auto* end = begin + cells[j].size();
      const auto res = std::from_chars(begin, end, v);
      if (res.ec != std::errc{} || res.ptr != end)
        throw InputError("CSV entry (" + std::to_string(i) + ", " + std::to_string(j) +
                         ") is not a number: '" + std::string(cells[j]) + "'");
      m(i, j) = v;
    }
  }
  return validate_metric(m, tol_metric, std::move(name), std::move(labels));
}

MetricSpace load_space(const std::filesystem::path& path, double tol_metric) {
  if (path.extension() == ".csv")
    return space_from_csv(read_text_file(path), tol_metric, path.stem().string());
  return space_from_json(parse_json_file(path), tol_metric);
}

IdList resolve_ids(const json& ids, const MetricSpace& space) {
  if (!ids.is_array()) throw InputError("id list must be a JSON array");
  IdList out;
  out.reserve(ids.size());
  for (const auto& v : ids) {
    if (v.is_number_integer()) {
      const long long raw = v.get<long long>();
      if (raw < 0 || !space.contains(static_cast<Index>(raw)))
        throw UnknownIdError("id " + std::to_string(raw) + " is not a point of the space");
      out.push_back(static_cast<Index>(raw));
    } else if (v.is_string()) {
      const auto found = space.find_label(v.get<std::string>());
      if (!found) throw UnknownIdError("unknown label '" + v.get<std::string>() + "'");
      out.push_back(*found);
    } else {
      throw InputError("ids must be integers or label strings");
    }
  }
  return out;
}

SubsetSelection subset_from_json(const json& doc, SpacePtr space) {
  if (!doc.is_object() || !doc.contains("members"))
    throw InputError("subset file needs a 'members' array");
  try {
    return SubsetSelection(space, resolve_ids(doc.at("members"), *space));
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("bad subset: ") + e.what());
  }
}

SubsetSelection load_subset(const std::filesystem::path& path, SpacePtr space) {
  return subset_from_json(parse_json_file(path), std::move(space));
}

MapSample map_from_json(const json& doc, SpacePtr space) {
  if (!doc.is_object() || !doc.contains("domain") || !doc.contains("image"))
    throw InputError("map file needs 'domain' and 'image' arrays");
  IdList domain = resolve_ids(doc.at("domain"), *space);
  IdList image = resolve_ids(doc.at("image"), *space);
  try {
    return MapSample(std::move(space), std::move(domain), std::move(image));
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("bad map: ") + e.what());
  }
}

MapSample load_map(const std::filesystem::path& path, SpacePtr space) {
  return map_from_json(parse_json_file(path), std::move(space));
}

}  // namespace metric_gauge
