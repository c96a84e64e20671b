#pragma once

// Independent reference computations for tests. Nothing here calls into the
// DP engine or the sliding-window code it checks.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "ardtw/core_dp.hpp"

namespace ardtw::oracle {

inline std::vector<double> random_values(std::mt19937_64& rng, int n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (double& x : v) x = dist(rng);
  return v;
}

inline TimeSeries random_series(std::mt19937_64& rng, int n, double lo = -1.0, double hi = 1.0) {
  return TimeSeries(random_values(rng, n, lo, hi));
}

// Smooth series: a random walk passed through a short moving average.
inline TimeSeries random_smooth_series(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> step(0.0, 1.0);
  std::vector<double> walk(static_cast<std::size_t>(n));
  double x = 0.0;
  for (double& v : walk) {
    x += step(rng);
    v = x;
  }
  std::vector<double> out(walk.size());
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    int k = 0;
    for (int j = std::max(0, i - 2); j <= std::min(n - 1, i + 2); ++j, ++k) sum += walk[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = sum / k;
  }
  return TimeSeries(std::move(out));
}

// Exhaustive minimum over every path from (1,1) to (n,m) with unit steps.
inline double brute_force_min(const std::function<double(int, int)>& cost, int n, int m) {
  double best = std::numeric_limits<double>::infinity();
  std::function<void(int, int, double)> walk = [&](int a, int b, double acc) {
    acc += cost(a, b);
    if (a == n && b == m) {
      best = std::min(best, acc);
      return;
    }
    if (a < n && b < m) walk(a + 1, b + 1, acc);
    if (b < m) walk(a, b + 1, acc);
    if (a < n) walk(a + 1, b, acc);
  };
  walk(1, 1, 0.0);
  return best;
}

// Naive in-range window, straight from the definition.
inline std::vector<std::pair<double, double>> window_pairs(const TimeSeries& s, const TimeSeries& t, int a, int b,
                                                            int w_h) {
  std::vector<std::pair<double, double>> out;
  for (int w = -w_h; w <= w_h; ++w) {
    if (a + w >= 1 && a + w <= s.size() && b + w >= 1 && b + w <= t.size()) {
      out.emplace_back(s.at(a + w), t.at(b + w));
    }
  }
  return out;
}

inline double naive_regional(const TimeSeries& s, const TimeSeries& t, int a, int b, int w_h) {
  const auto pairs = window_pairs(s, t, a, b, w_h);
  double sum = 0.0;
  for (const auto& [x, y] : pairs) sum += (x - y) * (x - y);
  return sum / static_cast<double>(pairs.size());
}

// Least squares of x ~ c*y + e via the 2x2 normal equations on centred data,
// optionally with c restricted to [c_min, c_max] (profiled, convex in c).
struct LsqFit {
  double c;
  double e;
  double residual;  // sum of squared errors
};

inline LsqFit least_squares(const std::vector<std::pair<double, double>>& pairs,
                            double c_min = -std::numeric_limits<double>::infinity(),
                            double c_max = std::numeric_limits<double>::infinity()) {
  const double n = static_cast<double>(pairs.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pairs) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : pairs) {
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  double c = syy > 1e-14 ? sxy / syy : 1.0;
  c = std::clamp(c, c_min, c_max);
  const double e = mx - c * my;
  double res = 0.0;
  for (const auto& [x, y] : pairs) res += (x - c * y - e) * (x - c * y - e);
  return {c, e, res};
}

// Minimises a smooth convex function of two variables by a coarse grid
// followed by successively finer grids around the best point.
inline std::pair<double, double> grid_minimize(const std::function<double(double, double)>& f, double c_lo,
                                               double c_hi, double e_lo, double e_hi, int rounds = 25) {
  double best_c = c_lo, best_e = e_lo, best = std::numeric_limits<double>::infinity();
  double c_step = (c_hi - c_lo) / 40.0;
  double e_step = (e_hi - e_lo) / 40.0;
  double c0 = c_lo, e0 = e_lo;
  for (int round = 0; round < rounds; ++round) {
    for (int i = 0; i <= 40; ++i) {
      for (int j = 0; j <= 40; ++j) {
        const double c = std::clamp(c0 + i * c_step, c_lo, c_hi);
        const double e = e0 + j * e_step;
        const double v = f(c, e);
        if (v < best) {
          best = v;
          best_c = c;
          best_e = e;
        }
      }
    }
    c_step /= 4.0;
    e_step /= 4.0;
    c0 = best_c - 20.0 * c_step;
    e0 = best_e - 20.0 * e_step;
  }
  return {best_c, best_e};
}

inline bool close_rel(double x, double y, double rel) {
  return std::abs(x - y) <= rel * std::max({1.0, std::abs(x), std::abs(y)});
}

}  // namespace ardtw::oracle
