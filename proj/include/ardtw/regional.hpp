#pragma once

#include "ardtw/core_dp.hpp"

namespace ardtw {

/// Region of half-width w_h around a match; the region width is 1 + 2 * w_h.
struct RegionConfig {
  int half_width = 0;
  [[nodiscard]] int region_width() const noexcept { return 1 + 2 * half_width; }
  void validate() const;
};

struct RegionalCost {
  double cost = 0.0;
  int count = 0;  // in-range offsets, always >= 1
};

/// Mean squared difference over the window of offsets w in [-w_h, w_h]
/// around (a, b) for which both s[a + w] and t[b + w] exist. O(w_h).
[[nodiscard]] RegionalCost regional_cost_direct(const TimeSeries& s, const TimeSeries& t, int a, int b, int w_h);

/// Regional costs of every in-band cell, maintained along each diagonal with
/// O(1) work per cell.
[[nodiscard]] CostTable regional_cost_table(const TimeSeries& s, const TimeSeries& t, BandConfig band, int w_h);

/// Regional DTW. With w_h = 0 this is exactly dtw().
[[nodiscard]] AlignResult rdtw(const TimeSeries& s, const TimeSeries& t, BandConfig band, int w_h);

}  // namespace ardtw
