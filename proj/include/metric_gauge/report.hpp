#pragma once

#include "metric_gauge/certifier.hpp"
#include "metric_gauge/gauge.hpp"
#include "metric_gauge/hypothesis_lab.hpp"
#include "metric_gauge/nets.hpp"

#include <json.hpp>

// JSON views of results. Keys come out sorted (nlohmann::json uses an
// ordered map), doubles round-trip, and non-finite values become null.
namespace metric_gauge {

nlohmann::json ids_to_json(const IdList& ids, const MetricSpace& space);
nlohmann::json space_summary(const MetricSpace& space);
nlohmann::json to_json(const SeparatedSet& set, const MetricSpace& space);
nlohmann::json to_json(const PackingResult& result, const MetricSpace& space);
nlohmann::json to_json(const Cover& cover, const MetricSpace& space);
nlohmann::json to_json(const GaugeResult& result, const MetricSpace& space);
nlohmann::json to_json(const NearMaximality& cert);
nlohmann::json to_json(const CertReport& report, const MetricSpace& space);
nlohmann::json to_json(const IsometryCertificate& cert, const MetricSpace& space);
nlohmann::json to_json(const DemoResult& demo);

}  // namespace metric_gauge
