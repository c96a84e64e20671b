#include <gtest/gtest.h>

#include <random>

#include "ardtw/affine.hpp"
#include "ardtw/errors.hpp"
#include "oracles.hpp"

namespace ardtw {
namespace {

AlignmentPath diagonal(int n) {
  AlignmentPath p;
  for (int i = 1; i <= n; ++i) p.push_back({i, i});
  return p;
}

std::vector<std::pair<double, double>> matched(const TimeSeries& s, const TimeSeries& t, const AlignmentPath& p) {
  std::vector<std::pair<double, double>> out;
  for (const auto& [a, b] : p) out.emplace_back(s.at(a), t.at(b));
  return out;
}

TEST(AffineFit, HandEvaluated) {
  const auto fit = affine_fit(TimeSeries{2, 4, 6}, TimeSeries{0, 1, 2}, diagonal(3));
  EXPECT_DOUBLE_EQ(fit.scale, 2.0);
  EXPECT_DOUBLE_EQ(fit.offset, 2.0);
  const auto ls = oracle::least_squares({{2, 0}, {4, 1}, {6, 2}});
  EXPECT_NEAR(ls.c, 2.0, 1e-12);
  EXPECT_NEAR(ls.e, 2.0, 1e-12);
}

TEST(AffineFit, IdentityOnEqualSeries) {
  const TimeSeries s{0.5, -1.0, 2.0, 3.5};
  const auto fit = affine_fit(s, s, diagonal(4));
  EXPECT_NEAR(fit.scale, 1.0, 1e-15);
  EXPECT_NEAR(fit.offset, 0.0, 1e-15);
}

TEST(AffineFit, ClampThenRecomputeOffset) {
  const TimeSeries s{0, 10};
  const TimeSeries t{0, 1};
  const auto fit = affine_fit(s, t, diagonal(2), ScalingBounds{0.2, 5.0});
  EXPECT_EQ(fit.scale, 5.0);
  EXPECT_DOUBLE_EQ(fit.offset, 2.5);
  // 2.5 is the conditional optimum for c = 5.
  const auto obj = [&](double e) { return affine_objective(s, t, diagonal(2), {5.0, e}); };
  EXPECT_LT(obj(2.5), obj(2.5 + 1e-3));
  EXPECT_LT(obj(2.5), obj(2.5 - 1e-3));
  EXPECT_EQ(affine_fit(s, t, diagonal(2), ScalingBounds::none()).scale, 10.0);
}

TEST(AffineFit, DegenerateFallsBackToUnitScale) {
  const TimeSeries s{1, 5, 3};
  const TimeSeries t{2, 2, 2};
  const auto fit = affine_fit(s, t, diagonal(3));
  EXPECT_EQ(fit.scale, 1.0);
  EXPECT_DOUBLE_EQ(fit.offset, 3.0 - 2.0);
}

TEST(AffineFit, MatchesLeastSquaresOracle) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = oracle::random_series(rng, 25);
    const auto t = oracle::random_series(rng, 25);
    const auto p = dtw(s, t, BandConfig{5}).path;
    const auto fit = affine_fit(s, t, p, ScalingBounds::none());
    const auto ls = oracle::least_squares(matched(s, t, p));
    EXPECT_TRUE(oracle::close_rel(fit.scale, ls.c, 1e-9)) << fit.scale << " vs " << ls.c;
    EXPECT_TRUE(oracle::close_rel(fit.offset, ls.e, 1e-9));
  }
}

TEST(AffineFit, CovariantUnderAffineChangeOfT) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> alpha_dist(0.1, 4.0);
  std::uniform_real_distribution<double> beta_dist(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = oracle::random_series(rng, 30);
    const auto t = oracle::random_series(rng, 30);
    const auto p = dtw(s, t, BandConfig{6}).path;
    const double alpha = alpha_dist(rng);
    const double beta = beta_dist(rng);
    const auto t2 = apply_affine(t, {alpha, beta});
    const auto base = affine_fit(s, t, p, ScalingBounds::none());
    const auto moved = affine_fit(s, t2, p, ScalingBounds::none());
    EXPECT_TRUE(oracle::close_rel(moved.scale, base.scale / alpha, 1e-9));
    EXPECT_TRUE(oracle::close_rel(moved.offset, base.offset - base.scale * beta / alpha, 1e-9));
    EXPECT_TRUE(oracle::close_rel(affine_objective(s, t2, p, moved), affine_objective(s, t, p, base), 1e-9));
  }
}

TEST(ApplyAffine, Elementwise) {
  EXPECT_EQ(apply_affine(TimeSeries{1, 2}, {1, 0}), (TimeSeries{1, 2}));
  EXPECT_EQ(apply_affine(TimeSeries{1, 2}, {2, -1}), (TimeSeries{1, 3}));
  EXPECT_EQ(apply_affine(TimeSeries{0, 0, 0}, {5, 4}), (TimeSeries{4, 4, 4}));
}

TEST(Config, Validation) {
  EXPECT_THROW((ScalingBounds{3.0, 1.0}.validate()), ConfigError);
  EXPECT_THROW((EmConfig{0.0, 10}.validate()), ConfigError);
  EXPECT_THROW((EmConfig{1e-5, 0}.validate()), ConfigError);
  const TimeSeries s{1, 2, 3};
  EXPECT_THROW(adtw(s, s, {}, {}, EmConfig{-1.0, 5}), ConfigError);
}

TEST(Adtw, RecoversExactAffineRelation) {
  std::mt19937_64 rng(21);
  const auto t = oracle::random_smooth_series(rng, 80);
  const auto s = apply_affine(t, {2.5, -0.7});
  const auto r = adtw(s, t, BandConfig{});
  EXPECT_NEAR(r.params.scale, 2.5, 1e-6);
  EXPECT_NEAR(r.params.offset, -0.7, 1e-6);
  EXPECT_EQ(r.path, diagonal(80));
  EXPECT_LT(r.measure, 1e-12);
}

TEST(Adtw, IdenticalSeriesConvergesImmediately) {
  std::mt19937_64 rng(2);
  const auto s = oracle::random_series(rng, 40);
  const auto r = adtw(s, s, BandConfig{8});
  EXPECT_EQ(r.params.scale, 1.0);
  EXPECT_EQ(r.params.offset, 0.0);
  EXPECT_EQ(r.path, diagonal(40));
  EXPECT_EQ(r.measure, 0.0);
  EXPECT_LE(r.iterations, 2);
  EXPECT_TRUE(r.converged);
}

TEST(Adtw, ObjectiveNeverIncreases) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    const auto s = oracle::random_series(rng, 50);
    const auto t = oracle::random_series(rng, 50);
    const auto r = adtw(s, t, BandConfig{10});
    ASSERT_FALSE(r.objective_history.empty());
    for (std::size_t v = 1; v < r.objective_history.size(); ++v) {
      EXPECT_LE(r.objective_history[v], r.objective_history[v - 1] + 1e-12) << "seed " << seed;
    }
    EXPECT_LE(r.iterations, 100);
    EXPECT_TRUE(validate_path(r.path, 50, 50));
    EXPECT_EQ(r.measure, affine_objective(s, t, r.path, r.params));
    EXPECT_GE(r.params.scale, 0.2);
    EXPECT_LE(r.params.scale, 5.0);
  }
}

TEST(Adtw, StopsAtIterationCap) {
  std::mt19937_64 rng(4);
  const auto s = oracle::random_series(rng, 30);
  const auto t = oracle::random_series(rng, 30);
  const auto r = adtw(s, t, BandConfig{6}, {}, EmConfig{1e-300, 1});
  EXPECT_EQ(r.iterations, 1);
  EXPECT_EQ(r.objective_history.size(), 1u);
}

}  // namespace
}  // namespace ardtw
