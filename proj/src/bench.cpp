#include "ardtw/bench.hpp"

#include <algorithm>
#include <chrono>

#include "ardtw/errors.hpp"

namespace ardtw {

void BenchConfig::validate() const {
  if (repeats < 1) {
    throw ConfigError("repeats must be at least 1");
  }
  if (!(wq_ratio >= 0.0) || !(wh_ratio >= 0.0)) {
    throw ConfigError("window ratios must be non-negative");
  }
  bounds.validate();
  em.validate();
}

std::vector<BenchEntry> benchmark_methods(std::span<const TimeSeries> series, std::span<const MethodKind> methods,
                                          const BenchConfig& cfg) {
  cfg.validate();
  if (series.size() < 2) {
    throw ConfigError("benchmark needs at least two series");
  }
  std::vector<MethodKind> order{MethodKind::kDtw};
  for (const auto m : methods) {
    if (std::find(order.begin(), order.end(), m) == order.end()) order.push_back(m);
  }

  std::vector<double> seconds(order.size(), 0.0);
  std::vector<double> iterations(order.size(), 0.0);
  const std::size_t count = series.size();
  for (int r = 0; r < cfg.repeats; ++r) {
    for (std::size_t k = 0; k < order.size(); ++k) {
      for (std::size_t i = 0; i < count; ++i) {
        const TimeSeries& s = series[i];
        const TimeSeries& t = series[(i + 1) % count];
        MethodParams params;
        params.band = BandConfig{ratio_to_samples(cfg.wq_ratio, s.size())};
        params.w_h = region_samples(order[k], cfg.wh_ratio, s.size());
        params.bounds = cfg.bounds;
        params.em = cfg.em;
        const auto start = std::chrono::steady_clock::now();
        const auto result = run_method(order[k], s, t, params);
        seconds[k] += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        iterations[k] += result.iterations;
      }
    }
  }

  const double runs = static_cast<double>(count) * cfg.repeats;
  std::vector<BenchEntry> out;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (!methods.empty() && std::find(methods.begin(), methods.end(), order[k]) == methods.end()) continue;
    BenchEntry e;
    e.method = order[k];
    e.mean_seconds = seconds[k] / runs;
    e.ratio_to_dtw = seconds[0] > 0.0 ? seconds[k] / seconds[0] : 0.0;
    e.mean_iterations = iterations[k] / runs;
    out.push_back(e);
  }
  return out;
}

}  // namespace ardtw
