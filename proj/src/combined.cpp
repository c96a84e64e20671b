#include "ardtw/combined.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "ardtw/errors.hpp"
#include "ardtw/regional.hpp"
#include "hard_em.hpp"
#include "windows.hpp"

namespace ardtw {

namespace {

void check_cell(const TimeSeries& s, const TimeSeries& t, int a, int b, int w_h) {
  if (w_h < 0) {
    throw ConfigError("region half-width must be non-negative");
  }
  if (a < 1 || a > s.size() || b < 1 || b > t.size()) {
    throw ConfigError("cell (" + std::to_string(a) + ", " + std::to_string(b) + ") is out of range");
  }
}

TimeSeries centred(const TimeSeries& x) {
  const auto v = x.values();
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  std::vector<double> out(v.begin(), v.end());
  for (double& y : out) y -= mean;
  return TimeSeries(std::move(out));
}

void require_local_window(int w_h) {
  if (w_h < 1) {
    throw ConfigError("LARDTW needs a region half-width of at least 1; with w_h = 0 every local fit is exact");
  }
}

}  // namespace

WindowStats window_stats(const TimeSeries& s, const TimeSeries& t, int a, int b, int w_h) {
  check_cell(s, t, a, b, w_h);
  const auto r = detail::window_offsets(a, b, s.size(), t.size(), w_h);
  WindowStats stats;
  for (int w = r.lo; w <= r.hi; ++w) {
    stats.add(s.at(a + w), t.at(b + w));
  }
  return stats;
}

std::vector<WindowStats> window_stats_table(const TimeSeries& s, const TimeSeries& t, BandConfig band,
                                            int w_h) {
  if (w_h < 0) {
    throw ConfigError("region half-width must be non-negative");
  }
  const CostTable shape(s.size(), t.size(), band);
  std::vector<WindowStats> out(shape.raw().size());
  detail::for_each_window<WindowStats>(s, t, w_h, shape.half_width(),
                                       [&](int a, int b, const WindowStats& stats, int) {
                                         out[shape.index(a, b)] = stats;
                                       });
  return out;
}

AffineParams gardtw_affine_fit(const TimeSeries& s, const TimeSeries& t, std::span<const IndexPair> p, int w_h,
                               const ScalingBounds& bounds) {
  bounds.validate();
  if (w_h < 0) {
    throw ConfigError("region half-width must be non-negative");
  }
  if (p.empty()) {
    throw ConfigError("affine fit needs at least one match");
  }
  const auto mo = detail::path_window_moments(s, t, p, w_h);
  return fit_affine_moments(mo.sum_st, mo.sum_s, mo.sum_t, mo.sum_tt, mo.count, bounds);
}

double gardtw_objective(const TimeSeries& s, const TimeSeries& t, std::span<const IndexPair> p,
                        AffineParams params, int w_h) {
  return detail::windowed_affine_objective(s, t, p, params, w_h);
}

EmResult gardtw(const TimeSeries& s, const TimeSeries& t, BandConfig band, int w_h, const ScalingBounds& bounds,
                const EmConfig& em) {
  bounds.validate();
  if (w_h < 0) {
    throw ConfigError("region half-width must be non-negative");
  }
  return detail::run_hard_em(
      [&](AffineParams params) { return rdtw(s, apply_affine(t, params), band, w_h).path; },
      [&](const AlignmentPath& p) { return gardtw_affine_fit(s, t, p, w_h, bounds); },
      [&](const AlignmentPath& p, AffineParams params) { return gardtw_objective(s, t, p, params, w_h); }, em);
}

namespace {

// Mean residual of the clamped least-squares map over one window, using the
// centred form of eta - 2c*rho - 2e*phi + c^2*gamma + 2ce*tau + count*e^2
// with e = (phi - c*tau) / count.
inline double local_residual(const WindowStats& st, const ScalingBounds& bounds) noexcept {
  const double inv = 1.0 / st.count;
  const double sxy = st.rho - st.phi * st.tau * inv;
  const double syy = st.gamma - st.tau * st.tau * inv;
  const double sxx = st.eta - st.phi * st.phi * inv;
  const double c = bounds.clamp(syy > kDegenerateVariance * st.gamma ? sxy / syy : 1.0);
  return std::max(sxx - 2.0 * c * sxy + c * c * syy, 0.0) * inv;
}

}  // namespace

AffineParams local_affine_fit(const WindowStats& stats, const ScalingBounds& bounds) {
  if (stats.count < 1) {
    throw ConfigError("window statistics must cover at least one pair");
  }
  return fit_affine_moments(stats.rho, stats.phi, stats.tau, stats.gamma, stats.count, bounds);
}

double local_cost_from_stats(const WindowStats& stats, const ScalingBounds& bounds) {
  if (stats.count < 1) {
    throw ConfigError("window statistics must cover at least one pair");
  }
  return local_residual(stats, bounds);
}

double local_cost(const TimeSeries& s, const TimeSeries& t, int a, int b, int w_h, const ScalingBounds& bounds) {
  check_cell(s, t, a, b, w_h);
  // Two passes: the residual does not depend on where either window is
  // centred, so the sums are taken about the window means.
  const auto r = detail::window_offsets(a, b, s.size(), t.size(), w_h);
  double ms = 0.0;
  double mt = 0.0;
  for (int w = r.lo; w <= r.hi; ++w) {
    ms += s.at(a + w);
    mt += t.at(b + w);
  }
  ms /= r.hi - r.lo + 1;
  mt /= r.hi - r.lo + 1;
  WindowStats stats;
  for (int w = r.lo; w <= r.hi; ++w) stats.add(s.at(a + w) - ms, t.at(b + w) - mt);
  return local_cost_from_stats(stats, bounds);
}

CostTable local_cost_table(const TimeSeries& s, const TimeSeries& t, BandConfig band, int w_h,
                           const ScalingBounds& bounds) {
  require_local_window(w_h);
  bounds.validate();
  CostTable table(s.size(), t.size(), band);
  // Same residual on mean-centred copies, with far less cancellation in the
  // rolling sums when the series sit on a large offset.
  detail::fill_windowed<WindowStats>(centred(s), centred(t), w_h, table, [&](const WindowStats& stats, int) {
    return local_residual(stats, bounds);
  });
  return table;
}

AlignResult lardtw(const TimeSeries& s, const TimeSeries& t, BandConfig band, int w_h, const ScalingBounds& bounds) {
  auto dp = dp_align(local_cost_table(s, t, band, w_h, bounds));
  return {std::move(dp.path), dp.total};
}

}  // namespace ardtw
