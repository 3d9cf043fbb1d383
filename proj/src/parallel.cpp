#include "metric_gauge/parallel.hpp"

#include <cstdlib>
#include <string>

namespace metric_gauge {

unsigned worker_count() {
  if (const char* env = std::getenv("METRIC_GAUGE_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

}  // namespace metric_gauge
