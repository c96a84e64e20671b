#include <gtest/gtest.h>

#include <random>

#include "ardtw/combined.hpp"
#include "ardtw/errors.hpp"
#include "ardtw/regional.hpp"
#include "oracles.hpp"

namespace ardtw {
namespace {

AlignmentPath diagonal(int n) {
  AlignmentPath p;
  for (int i = 1; i <= n; ++i) p.push_back({i, i});
  return p;
}

WindowStats stats_of(const std::vector<double>& xs, const std::vector<double>& ys) {
  WindowStats st;
  for (std::size_t i = 0; i < xs.size(); ++i) st.add(xs[i], ys[i]);
  return st;
}

// D_G straight from its definition.
double naive_gardtw_objective(const TimeSeries& s, const TimeSeries& t, const AlignmentPath& p, double c, double e,
                              int w_h) {
  double total = 0.0;
  for (const auto& [a, b] : p) {
    const auto pairs = oracle::window_pairs(s, t, a, b, w_h);
    double sum = 0.0;
    for (const auto& [x, y] : pairs) sum += (x - c * y - e) * (x - c * y - e);
    total += sum / static_cast<double>(pairs.size());
  }
  return total;
}

TEST(GardtwAffineFit, ZeroHalfWidthIsAffineFit) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = oracle::random_series(rng, 30);
    const auto t = oracle::random_series(rng, 30);
    const auto p = dtw(s, t, BandConfig{5}).path;
    EXPECT_EQ(gardtw_affine_fit(s, t, p, 0), affine_fit(s, t, p));
    EXPECT_EQ(gardtw_affine_fit(s, t, p, 0, ScalingBounds::none()), affine_fit(s, t, p, ScalingBounds::none()));
  }
}

TEST(GardtwAffineFit, ExactAffineRelation) {
  std::mt19937_64 rng(2);
  const auto t = oracle::random_series(rng, 40);
  const auto s = apply_affine(t, {2.0, 1.0});
  for (const int w_h : {0, 1, 3, 10}) {
    const auto fit = gardtw_affine_fit(s, t, diagonal(40), w_h);
    EXPECT_NEAR(fit.scale, 2.0, 1e-12);
    EXPECT_NEAR(fit.offset, 1.0, 1e-12);
    EXPECT_NEAR(gardtw_objective(s, t, diagonal(40), fit, w_h), 0.0, 1e-20);
  }
}

TEST(GardtwAffineFit, MatchesNumericMinimizer) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto t = oracle::random_series(rng, 30);
    // Correlated s so the unconstrained optimum sits inside the bounds.
    auto noise = oracle::random_values(rng, 30, -0.5, 0.5);
    std::vector<double> sv(30);
    for (int i = 0; i < 30; ++i) sv[static_cast<std::size_t>(i)] = 1.7 * t.at(i + 1) + 0.3 + noise[static_cast<std::size_t>(i)];
    const TimeSeries s(sv);
    const auto p = dtw(s, t, BandConfig{4}).path;
    for (const auto& bounds : {ScalingBounds{}, ScalingBounds::none(), ScalingBounds{2.0, 3.0}}) {
      const auto fit = gardtw_affine_fit(s, t, p, 2, bounds);
      const double lo = std::max(bounds.c_min, -10.0);
      const double hi = std::min(bounds.c_max, 10.0);
      const auto [c, e] = oracle::grid_minimize(
          [&](double cc, double ee) { return naive_gardtw_objective(s, t, p, cc, ee, 2); }, lo, hi, -10.0, 10.0);
      EXPECT_NEAR(fit.scale, c, 1e-6);
      EXPECT_NEAR(fit.offset, e, 1e-6);
      EXPECT_NEAR(gardtw_objective(s, t, p, fit, 2), naive_gardtw_objective(s, t, p, fit.scale, fit.offset, 2),
                  1e-12);
    }
  }
}

TEST(Gardtw, ZeroHalfWidthIsAdtwIterateForIterate) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = oracle::random_series(rng, 50);
    const auto t = oracle::random_series(rng, 50);
    const auto g = gardtw(s, t, BandConfig{10}, 0);
    const auto a = adtw(s, t, BandConfig{10});
    EXPECT_EQ(g.objective_history, a.objective_history);
    EXPECT_EQ(g.path, a.path);
    EXPECT_EQ(g.params, a.params);
    EXPECT_EQ(g.measure, a.measure);
    EXPECT_EQ(g.iterations, a.iterations);
  }
}

TEST(Gardtw, RecoversExactAffineRelation) {
  std::mt19937_64 rng(5);
  const auto t = oracle::random_smooth_series(rng, 80);
  const auto s = apply_affine(t, {3.0, -1.0});
  const auto r = gardtw(s, t, BandConfig{}, 2);
  EXPECT_NEAR(r.params.scale, 3.0, 1e-6);
  EXPECT_NEAR(r.params.offset, -1.0, 1e-6);
  EXPECT_LT(r.measure, 1e-10);
}

TEST(Gardtw, ObjectiveNeverIncreases) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(1000 + seed);
    const auto s = oracle::random_series(rng, 50);
    const auto t = oracle::random_series(rng, 50);
    const auto r = gardtw(s, t, BandConfig{10}, 2);
    for (std::size_t v = 1; v < r.objective_history.size(); ++v) {
      EXPECT_LE(r.objective_history[v], r.objective_history[v - 1] + 1e-12) << "seed " << seed;
    }
    EXPECT_TRUE(validate_path(r.path, 50, 50));
    EXPECT_EQ(r.measure, gardtw_objective(s, t, r.path, r.params, 2));
  }
}

TEST(LocalAffineFit, Examples) {
  const auto fit = local_affine_fit(stats_of({2, 4, 6}, {0, 1, 2}));
  EXPECT_DOUBLE_EQ(fit.scale, 2.0);
  EXPECT_DOUBLE_EQ(fit.offset, 2.0);

  const auto flat = local_affine_fit(stats_of({0, 2, 4}, {1, 1, 1}));
  EXPECT_EQ(flat.scale, 1.0);
  EXPECT_DOUBLE_EQ(flat.offset, 1.0);

  // t-window = 0.5 * s-window - 2, so s = 2 t + 4.
  const auto exact = stats_of({1, 3, -2, 5}, {-1.5, -0.5, -3, 0.5});
  const auto inv = local_affine_fit(exact);
  EXPECT_NEAR(inv.scale, 2.0, 1e-12);
  EXPECT_NEAR(inv.offset, 4.0, 1e-12);
  EXPECT_NEAR(local_cost_from_stats(exact), 0.0, 1e-14);

  EXPECT_THROW((void)local_affine_fit(WindowStats{}), ConfigError);
}

TEST(LocalCost, DegenerateWindowHandEvaluated) {
  const TimeSeries s{0, 2, 4};
  const TimeSeries t{1, 1, 1};
  EXPECT_DOUBLE_EQ(local_cost(s, t, 2, 2, 1), 8.0 / 3.0);
}

TEST(LocalCost, MatchesLeastSquaresOracle) {
  std::mt19937_64 rng(6);
  const auto s = oracle::random_series(rng, 40, -2, 2);
  const auto t = oracle::random_series(rng, 40, -2, 2);
  for (const auto& bounds : {ScalingBounds{}, ScalingBounds::none()}) {
    for (int a = 1; a <= 40; a += 3) {
      for (int b = 1; b <= 40; b += 4) {
        const auto pairs = oracle::window_pairs(s, t, a, b, 3);
        const auto ls = oracle::least_squares(pairs, bounds.c_min, bounds.c_max);
        EXPECT_NEAR(local_cost(s, t, a, b, 3, bounds), ls.residual / static_cast<double>(pairs.size()), 1e-8);
      }
    }
  }
}

TEST(LocalCost, InvariantUnderAffineChangeOfT) {
  std::mt19937_64 rng(7);
  const auto s = oracle::random_series(rng, 40);
  const auto t = oracle::random_series(rng, 40);
  for (const auto [alpha, beta] : {std::pair{2.0, 0.5}, std::pair{-0.7, 3.0}, std::pair{0.05, -1.0}}) {
    const auto t2 = apply_affine(t, {alpha, beta});
    for (int a = 1; a <= 40; a += 2) {
      for (int b = std::max(1, a - 5); b <= std::min(40, a + 5); ++b) {
        EXPECT_TRUE(oracle::close_rel(local_cost(s, t2, a, b, 2, ScalingBounds::none()),
                                      local_cost(s, t, a, b, 2, ScalingBounds::none()), 1e-9));
      }
    }
    EXPECT_TRUE(oracle::close_rel(lardtw(s, t2, BandConfig{8}, 2, ScalingBounds::none()).measure,
                                  lardtw(s, t, BandConfig{8}, 2, ScalingBounds::none()).measure, 1e-9));
  }
}

TEST(WindowStatsTable, RollingMatchesDirect) {
  std::mt19937_64 rng(8);
  for (const int w_h : {1, 5, 10}) {
    for (const auto [n, m, w_q] : {std::tuple{100, 100, 10}, std::tuple{100, 100, 50}, std::tuple{120, 90, 5},
                                   std::tuple{600, 600, 600}}) {
      const auto s = oracle::random_series(rng, n, -4, 4);
      const auto t = oracle::random_series(rng, m, -4, 4);
      const auto stats = window_stats_table(s, t, BandConfig{w_q}, w_h);
      const auto costs = local_cost_table(s, t, BandConfig{w_q}, w_h);
      for (int a = 1; a <= n; ++a) {
        for (int b = costs.first_col(a); b <= costs.last_col(a); ++b) {
          const auto& rolled = stats[costs.index(a, b)];
          const auto direct = window_stats(s, t, a, b, w_h);
          ASSERT_EQ(rolled.count, direct.count);
          ASSERT_TRUE(oracle::close_rel(rolled.rho, direct.rho, 1e-9));
          ASSERT_TRUE(oracle::close_rel(rolled.phi, direct.phi, 1e-9));
          ASSERT_TRUE(oracle::close_rel(rolled.tau, direct.tau, 1e-9));
          ASSERT_TRUE(oracle::close_rel(rolled.eta, direct.eta, 1e-9));
          ASSERT_TRUE(oracle::close_rel(rolled.gamma, direct.gamma, 1e-9));
          ASSERT_TRUE(oracle::close_rel(costs(a, b), local_cost(s, t, a, b, w_h), 1e-9));
          ASSERT_LE(rolled.rho * rolled.rho, rolled.eta * rolled.gamma * (1 + 1e-9) + 1e-12);
        }
      }
    }
  }
}

TEST(Lardtw, RejectsZeroHalfWidth) {
  const TimeSeries s{1, 2, 3};
  EXPECT_THROW(lardtw(s, s, BandConfig{}, 0), ConfigError);
}

TEST(Lardtw, SelfAlignment) {
  std::mt19937_64 rng(9);
  const auto s = oracle::random_series(rng, 50);
  for (const int w_h : {1, 3, 12}) {
    const auto r = lardtw(s, s, BandConfig{10}, w_h);
    EXPECT_LT(r.measure, 1e-12);
    EXPECT_EQ(r.path, diagonal(50));
  }
}

TEST(Lardtw, PiecewiseScaledCopy) {
  // Two bumps of s scaled differently in t, separated by a flat gap wider
  // than any window so every diagonal window is an exact affine image.
  const int w_h = 3;
  std::vector<double> sv(60, 0.0), tv(60, 0.0);
  std::mt19937_64 rng(10);
  const auto bump = oracle::random_values(rng, 20, 0.1, 2.0);
  for (int i = 0; i < 20; ++i) {
    sv[static_cast<std::size_t>(5 + i)] = bump[static_cast<std::size_t>(i)];
    sv[static_cast<std::size_t>(35 + i)] = bump[static_cast<std::size_t>(19 - i)];
    tv[static_cast<std::size_t>(5 + i)] = 3.0 * bump[static_cast<std::size_t>(i)];
    tv[static_cast<std::size_t>(35 + i)] = 0.5 * bump[static_cast<std::size_t>(19 - i)];
  }
  const TimeSeries s(sv), t(tv);
  const auto r = lardtw(s, t, BandConfig{10}, w_h);
  EXPECT_LT(r.measure, 1e-8);
  EXPECT_TRUE(validate_path(r.path, 60, 60));
  EXPECT_GT(rdtw(s, t, BandConfig{10}, w_h).measure, 1.0);
}

TEST(Lardtw, MatchesExhaustiveEnumeration) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> len(1, 7);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = len(rng), m = len(rng);
    const auto s = oracle::random_series(rng, n);
    const auto t = oracle::random_series(rng, m);
    const auto r = lardtw(s, t, BandConfig{}, 1);
    EXPECT_TRUE(validate_path(r.path, n, m));
    const double expected = oracle::brute_force_min(
        [&](int a, int b) {
          const auto pairs = oracle::window_pairs(s, t, a, b, 1);
          return oracle::least_squares(pairs, 0.2, 5.0).residual / static_cast<double>(pairs.size());
        },
        n, m);
    EXPECT_NEAR(r.measure, expected, 1e-9);
  }
}

}  // namespace
}  // namespace ardtw
