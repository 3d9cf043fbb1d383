#pragma once

#include "metric_gauge/certifier.hpp"
#include "metric_gauge/metric_space.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace metric_gauge {

/// Malformed or inconsistent input files.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Space files:
///   {"name": str, "labels": [str], "matrix": [[real]]}
///   {"name": str, "generator": {"type": str, ...params}}
/// or a CSV square matrix whose first row holds the labels.
MetricSpace load_space(const std::filesystem::path& path, double tol_metric = kDefaultTolMetric);
MetricSpace space_from_json(const nlohmann::json& doc, double tol_metric = kDefaultTolMetric);
MetricSpace space_from_csv(std::string_view text, double tol_metric = kDefaultTolMetric,
                           std::string name = {});
GeneratorSpec generator_from_json(const nlohmann::json& gen);
nlohmann::json generator_to_json(const GeneratorSpec& spec);

/// Resolves a JSON array of integer ids and/or labels against a space.
IdList resolve_ids(const nlohmann::json& ids, const MetricSpace& space);

/// Subset file: {"members": [int|str]}.
SubsetSelection load_subset(const std::filesystem::path& path, SpacePtr space);
SubsetSelection subset_from_json(const nlohmann::json& doc, SpacePtr space);

/// Map file: {"domain": [int|str], "image": [int|str]}.
MapSample load_map(const std::filesystem::path& path, SpacePtr space);
MapSample map_from_json(const nlohmann::json& doc, SpacePtr space);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace metric_gauge
