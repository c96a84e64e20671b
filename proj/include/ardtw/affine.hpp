#pragma once

#include <algorithm>
#include <limits>
#include <span>
#include <vector>

#include "ardtw/core_dp.hpp"

namespace ardtw {

/// Amplitude model t' = scale * t + offset.
struct AffineParams {
  double scale = 1.0;
  double offset = 0.0;
  bool operator==(const AffineParams&) const = default;
};

/// Admissible range for a fitted scale. Defaults to (0.2, 5).
struct ScalingBounds {
  double c_min = 0.2;
  double c_max = 5.0;

  // No clamping.
  [[nodiscard]] static ScalingBounds none() noexcept {
    return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  }
  void validate() const;
  [[nodiscard]] double clamp(double c) const noexcept { return std::clamp(c, c_min, c_max); }
};

/// Stopping rule for the alternating path/affine optimisation.
struct EmConfig {
  double d_stop = 1e-5;
  int max_iters = 100;
  void validate() const;
};

/// Below this fraction of sum t^2, sum (t - mean t)^2 is indistinguishable
/// from cancellation error and t is treated as constant.
inline constexpr double kDegenerateVariance = 1e-12;

/// Least-squares scale/offset from moment sums over `count` (possibly
/// fractionally weighted) samples:
///   sum_st = sum s*t, sum_s = sum s, sum_t = sum t, sum_tt = sum t^2.
/// The scale is clamped into `bounds` and the offset recomputed for it. When
/// the t-values carry no variance the scale falls back to 1 (then clamped).
[[nodiscard]] inline AffineParams fit_affine_moments(double sum_st, double sum_s, double sum_t, double sum_tt,
                                                     double count, const ScalingBounds& bounds) noexcept {
  const double denominator = sum_tt - sum_t * sum_t / count;
  double c = 1.0;
  if (denominator > kDegenerateVariance * sum_tt) {
    c = (sum_st - sum_s * sum_t / count) / denominator;
  }
  c = bounds.clamp(c);
  return {c, (sum_s - c * sum_t) / count};
}

/// Best (scale, offset) mapping t onto s over the matches in `p`.
[[nodiscard]] AffineParams affine_fit(const TimeSeries& s, const TimeSeries& t, std::span<const IndexPair> p,
                                      const ScalingBounds& bounds = {});

[[nodiscard]] TimeSeries apply_affine(const TimeSeries& t, AffineParams params);

/// sum_k (s[a_k] - (c * t[b_k] + e))^2
[[nodiscard]] double affine_objective(const TimeSeries& s, const TimeSeries& t, std::span<const IndexPair> p,
                                      AffineParams params);

struct EmResult {
  AlignmentPath path;
  AffineParams params;
  double measure = 0.0;
  int iterations = 0;
  bool converged = false;
  // Objective after each iteration, in order.
  std::vector<double> objective_history;
};

/// Affine DTW: alternates the optimal path for the current (c, e) with the
/// optimal (c, e) for that path, starting from (1, 0).
[[nodiscard]] EmResult adtw(const TimeSeries& s, const TimeSeries& t, BandConfig band = {},
                            const ScalingBounds& bounds = {}, const EmConfig& em = {});

}  // namespace ardtw
