#pragma once

#include <span>
#include <vector>

#include "ardtw/affine.hpp"
#include "ardtw/core_dp.hpp"

namespace ardtw {

/// Moment sums over the window around one match.
struct WindowStats {
  double rho = 0.0;    // sum s*t
  double phi = 0.0;    // sum s
  double tau = 0.0;    // sum t
  double eta = 0.0;    // sum s^2
  double gamma = 0.0;  // sum t^2
  int count = 0;

  void reset() noexcept { *this = WindowStats{}; }
  void add(double x, double y) noexcept {
    rho += x * y;
    phi += x;
    tau += y;
    eta += x * x;
    gamma += y * y;
    ++count;
  }
  void remove(double x, double y) noexcept {
    rho -= x * y;
    phi -= x;
    tau -= y;
    eta -= x * x;
    gamma -= y * y;
    --count;
  }
};

/// Window statistics of (a, b) computed directly, O(w_h).
[[nodiscard]] WindowStats window_stats(const TimeSeries& s, const TimeSeries& t, int a, int b, int w_h);

/// Statistics of every in-band cell, maintained along each diagonal.
/// Returned row-major in the same slot layout as a CostTable of that band.
[[nodiscard]] std::vector<WindowStats> window_stats_table(const TimeSeries& s, const TimeSeries& t,
                                                          BandConfig band, int w_h);

/// Global (c, e) minimising the regional objective D_G along a fixed path.
[[nodiscard]] AffineParams gardtw_affine_fit(const TimeSeries& s, const TimeSeries& t,
                                             std::span<const IndexPair> p, int w_h,
                                             const ScalingBounds& bounds = {});

/// sum_k (1 / w_k) sum_w (s[a_k + w] - (c * t[b_k + w] + e))^2
[[nodiscard]] double gardtw_objective(const TimeSeries& s, const TimeSeries& t, std::span<const IndexPair> p,
                                      AffineParams params, int w_h);

/// Global-affine regional DTW. With w_h = 0 it reproduces adtw() exactly.
[[nodiscard]] EmResult gardtw(const TimeSeries& s, const TimeSeries& t, BandConfig band, int w_h,
                              const ScalingBounds& bounds = {}, const EmConfig& em = {});

/// Least-squares (c, e) mapping the t-window onto the s-window.
[[nodiscard]] AffineParams local_affine_fit(const WindowStats& stats, const ScalingBounds& bounds = {});

/// Mean residual of the fitted local map, never negative.
[[nodiscard]] double local_cost_from_stats(const WindowStats& stats, const ScalingBounds& bounds = {});

[[nodiscard]] double local_cost(const TimeSeries& s, const TimeSeries& t, int a, int b, int w_h,
                                const ScalingBounds& bounds = {});

[[nodiscard]] CostTable local_cost_table(const TimeSeries& s, const TimeSeries& t, BandConfig band, int w_h,
                                         const ScalingBounds& bounds = {});

/// Local-affine regional DTW. Requires w_h >= 1.
[[nodiscard]] AlignResult lardtw(const TimeSeries& s, const TimeSeries& t, BandConfig band, int w_h,
                                 const ScalingBounds& bounds = {});

}  // namespace ardtw
