#pragma once

#include <span>
#include <vector>

#include "ardtw/evaluate.hpp"

namespace ardtw {

struct BenchEntry {
  MethodKind method = MethodKind::kDtw;
  double mean_seconds = 0.0;    // per alignment
  double ratio_to_dtw = 0.0;
  double mean_iterations = 0.0;  // ADTW / GARDTW only, else 0
};

struct BenchConfig {
  double wq_ratio = 0.2;
  double wh_ratio = 0.2;
  int repeats = 10;
  ScalingBounds bounds;
  EmConfig em;
  void validate() const;
};

/// Times every method on the pairs (x_i, x_{i+1 mod count}) of `series`,
/// `repeats` times each. Methods are interleaved per repeat so slow drift in
/// machine load hits all of them alike. DTW is always timed as the baseline.
[[nodiscard]] std::vector<BenchEntry> benchmark_methods(std::span<const TimeSeries> series,
                                                        std::span<const MethodKind> methods,
                                                        const BenchConfig& cfg);

}  // namespace ardtw
