#include "ardtw/affine.hpp"

#include <algorithm>
#include <cmath>

#include "ardtw/errors.hpp"
#include "hard_em.hpp"
#include "windows.hpp"

namespace ardtw {

void ScalingBounds::validate() const {
  if (std::isnan(c_min) || std::isnan(c_max) || c_min > c_max) {
    throw ConfigError("scaling bounds require c_min <= c_max");
  }
}

void EmConfig::validate() const {
  if (!(d_stop > 0.0)) {
    throw ConfigError("d_stop must be positive");
  }
  if (max_iters < 1) {
    throw ConfigError("max_iters must be at least 1");
  }
}

AffineParams affine_fit(const TimeSeries& s, const TimeSeries& t, std::span<const IndexPair> p,
                        const ScalingBounds& bounds) {
  bounds.validate();
  if (p.empty()) {
    throw ConfigError("affine fit needs at least one match");
  }
  const auto mo = detail::path_window_moments(s, t, p, 0);
  return fit_affine_moments(mo.sum_st, mo.sum_s, mo.sum_t, mo.sum_tt, mo.count, bounds);
}

TimeSeries apply_affine(const TimeSeries& t, AffineParams params) {
  std::vector<double> out(t.values().begin(), t.values().end());
  for (double& v : out) {
    v = params.scale * v + params.offset;
  }
  return TimeSeries(std::move(out));
}

double affine_objective(const TimeSeries& s, const TimeSeries& t, std::span<const IndexPair> p,
                        AffineParams params) {
  return detail::windowed_affine_objective(s, t, p, params, 0);
}

EmResult adtw(const TimeSeries& s, const TimeSeries& t, BandConfig band, const ScalingBounds& bounds,
              const EmConfig& em) {
  bounds.validate();
  return detail::run_hard_em(
      [&](AffineParams params) { return dtw(s, apply_affine(t, params), band).path; },
      [&](const AlignmentPath& p) { return affine_fit(s, t, p, bounds); },
      [&](const AlignmentPath& p, AffineParams params) { return affine_objective(s, t, p, params); }, em);
}

}  // namespace ardtw
