#pragma once

#include <optional>
#include <random>
#include <vector>

#include "ardtw/core_dp.hpp"

namespace ardtw {

using Rng = std::mt19937_64;

/// Step probabilities of the random warping function omega:
/// +1 (match), +2 (delete) or +0 (insert).
struct WarpConfig {
  double p_match = 0.6;
  double p_delete = 0.2;
  double p_insert = 0.2;

  /// P_w = 2 * P_delete = 2 * P_insert.
  [[nodiscard]] static WarpConfig from_warping_probability(double p_w);
  void validate() const;
};

/// Uniform ranges for the global scale and offset, plus white noise.
struct GlobalAffineConfig {
  double c_min = 0.2;
  double c_max = 5.0;
  double e_min = -1.0;
  double e_max = 1.0;
  double noise_sigma = 0.0;
  void validate() const;
};

/// Ground-truth matches between s (a) and t (b), sorted lexicographically.
/// Pairs may be many-to-one in either coordinate, and s-indices outside
/// every component carry no pair.
struct TrueAlignment {
  std::vector<IndexPair> pairs;
  // Per s-index (0-based) flag: covered by at least one component window.
  std::optional<std::vector<bool>> component_mask;
};

struct WarpSample {
  std::vector<int> omega;  // 1-based s-indices, non-decreasing
  TrueAlignment raw_truth;  // (omega(j), j)
};

[[nodiscard]] WarpSample sample_warp(int n, const WarpConfig& cfg, Rng& rng);

struct GlobalAffineInstance {
  TimeSeries t;
  TrueAlignment truth;
  // Everything drawn from the RNG, enough to rebuild t without re-drawing.
  std::vector<int> omega;
  double scale = 1.0;
  double offset = 0.0;
  std::vector<double> noise;  // empty when noise_sigma == 0
};

/// Warps s by a random omega, resamples the warped copy back to |s| points,
/// then applies a random global scale/offset and Gaussian noise.
[[nodiscard]] GlobalAffineInstance global_affine_instance(const TimeSeries& s, const WarpConfig& warp,
                                                          const GlobalAffineConfig& affine, Rng& rng);

/// Deterministic part of global_affine_instance() from recorded draws.
[[nodiscard]] GlobalAffineInstance build_global_affine_instance(const TimeSeries& s, std::vector<int> omega,
                                                                double scale, double offset,
                                                                std::vector<double> noise);

/// psi (length z) linearly resampled onto n points at 1 + (j-1)(z-1)/(n-1).
[[nodiscard]] std::vector<double> resample_linear(const std::vector<double>& psi, int n);

enum class WindowShape { kParzen = 1, kRectangular = 2, kTriangular = 3, kFlatTop = 4 };

/// Value at offset k from the centre of a window covering [-half, half],
/// with unit value at k = 0.
[[nodiscard]] double window_value(WindowShape shape, int k, int half);

/// Length-n series holding one window of shape z (1..4) centred at `center`
/// (1-based) over [center - width/2, center + width/2]; zero elsewhere.
[[nodiscard]] TimeSeries window_component(int z, int center, int width, int n);

struct ComponentConfig {
  int n = 400;
  int n_components = 4;
  int z_min = 1;
  int z_max = 4;
  int w_min = 50;
  int w_max = 100;
  int i_min = 1;
  int i_max = 400;
  double amp_mean = 1.0;
  double amp_sigma = 0.5;

  /// Widths on [n / (2 n_c), n / n_c], centres anywhere in 1..n.
  [[nodiscard]] static ComponentConfig defaults(int n = 400, int n_components = 4, double amp_sigma = 0.5);
  void validate() const;
};

/// One component as placed in both series.
struct ComponentDraw {
  int shape = 1;
  int width_s = 1;
  int width_t = 1;
  int center_s = 1;
  int center_t = 1;
  double amp_s = 1.0;
  double amp_t = 1.0;
};

struct ComponentInstance {
  TimeSeries s;
  TimeSeries t;
  TrueAlignment truth;
  std::vector<ComponentDraw> components;
};

[[nodiscard]] ComponentInstance component_instance(const ComponentConfig& cfg, Rng& rng);

/// Superposes the given components and derives the true alignment: each
/// covered s-index goes to the component with the nearest s-centre (ties to
/// the leftmost centre) and is matched to the same relative position inside
/// that component's t-window.
[[nodiscard]] ComponentInstance build_component_instance(int n, std::vector<ComponentDraw> components);

/// Smooth synthetic base series: a few Gaussian bumps over a slow sinusoid.
[[nodiscard]] TimeSeries smooth_base_series(int n, Rng& rng);

/// True iff pairs are in range, sorted, and non-decreasing in both coordinates.
[[nodiscard]] bool is_monotone_truth(const TrueAlignment& truth, int n, int m);

}  // namespace ardtw
