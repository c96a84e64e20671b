#include "ardtw/simulate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "ardtw/errors.hpp"

namespace ardtw {

namespace {

double uniform(double lo, double hi, Rng& rng) {
  if (lo == hi) {
    return lo;
  }
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(int lo, int hi, Rng& rng) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double folded_normal(double mean, double sigma, Rng& rng) {
  if (sigma == 0.0) {
    return std::abs(mean);
  }
  return std::abs(std::normal_distribution<double>(mean, sigma)(rng));
}

bool probability(double p) { return p >= 0.0 && p <= 1.0; }

int sign(int x) { return (x > 0) - (x < 0); }

// Centres appear in the same chronological order in s and t.
bool same_order(const std::vector<int>& cs, const std::vector<int>& ct) {
  for (std::size_t j = 0; j < cs.size(); ++j) {
    for (std::size_t k = j + 1; k < cs.size(); ++k) {
      if (sign(cs[j] - cs[k]) != sign(ct[j] - ct[k])) {
        return false;
      }
    }
  }
  return true;
}

// Flat-top window, five cosine terms.
constexpr std::array<double, 5> kFlatTop = {0.21557895, 0.41663158, 0.277263158, 0.083578947, 0.006947368};

}  // namespace

WarpConfig WarpConfig::from_warping_probability(double p_w) {
  WarpConfig cfg{1.0 - p_w, p_w / 2.0, p_w / 2.0};
  cfg.validate();
  return cfg;
}

void WarpConfig::validate() const {
  if (!probability(p_match) || !probability(p_delete) || !probability(p_insert)) {
    throw ConfigError("warp probabilities must lie in [0, 1]");
  }
  if (std::abs(p_match + p_delete + p_insert - 1.0) > 1e-12) {
    throw ConfigError("warp probabilities must sum to 1");
  }
  if (p_insert >= 1.0) {
    throw ConfigError("p_insert = 1 never advances the warp");
  }
}

void GlobalAffineConfig::validate() const {
  if (!(c_min <= c_max) || !(e_min <= e_max)) {
    throw ConfigError("affine ranges need min <= max");
  }
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw ConfigError("noise sigma must be a non-negative finite number");
  }
}

WarpSample sample_warp(int n, const WarpConfig& cfg, Rng& rng) {
  cfg.validate();
  if (n < 2) {
    throw ConfigError("warping needs a series of length at least 2");
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  WarpSample out;
  int current = 1;
  for (;;) {
    out.omega.push_back(current);
    const double u = unit(rng);
    const int step = u < cfg.p_match ? 1 : (u < cfg.p_match + cfg.p_delete ? 2 : 0);
    if (current + step > n) {
      break;
    }
    current += step;
  }
  for (std::size_t j = 0; j < out.omega.size(); ++j) {
    out.raw_truth.pairs.push_back({out.omega[j], static_cast<int>(j + 1)});
  }
  return out;
}

std::vector<double> resample_linear(const std::vector<double>& psi, int n) {
  const int z = static_cast<int>(psi.size());
  if (z < 1 || n < 1) {
    throw ConfigError("resampling needs non-empty input and output");
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    const double x = n == 1 ? 1.0 : 1.0 + static_cast<double>(j - 1) * (z - 1) / (n - 1);
    const int i0 = std::min(static_cast<int>(std::floor(x)), z);
    const double frac = x - i0;
    const double left = psi[static_cast<std::size_t>(i0 - 1)];
    out[static_cast<std::size_t>(j - 1)] =
        i0 >= z || frac == 0.0 ? left : left + frac * (psi[static_cast<std::size_t>(i0)] - left);
  }
  return out;
}

GlobalAffineInstance build_global_affine_instance(const TimeSeries& s, std::vector<int> omega, double scale,
                                                  double offset, std::vector<double> noise) {
  const int n = s.size();
  const int z = static_cast<int>(omega.size());
  if (z < 1) {
    throw DataError("warping function is empty");
  }
  if (!noise.empty() && static_cast<int>(noise.size()) != n) {
    throw DataError("noise vector length does not match the series");
  }
  std::vector<double> psi;
  psi.reserve(omega.size());
  for (const int i : omega) {
    if (i < 1 || i > n) {
      throw DataError("warping index " + std::to_string(i) + " is out of range");
    }
    psi.push_back(s.at(i));
  }
  std::vector<double> values = resample_linear(psi, n);
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = scale * values[i] + offset;
    if (!noise.empty()) {
      values[i] += noise[i];
    }
  }

  std::set<IndexPair> pairs;
  for (int j = 1; j <= z; ++j) {
    const int b = z == 1 ? 1 : static_cast<int>(std::lround(1.0 + static_cast<double>(j - 1) * (n - 1) / (z - 1)));
    pairs.insert({omega[static_cast<std::size_t>(j - 1)], b});
  }

  GlobalAffineInstance out{TimeSeries(std::move(values)), {}, std::move(omega), scale, offset, std::move(noise)};
  out.truth.pairs.assign(pairs.begin(), pairs.end());
  return out;
}

GlobalAffineInstance global_affine_instance(const TimeSeries& s, const WarpConfig& warp,
                                            const GlobalAffineConfig& affine, Rng& rng) {
  affine.validate();
  auto sample = sample_warp(s.size(), warp, rng);
  const double scale = uniform(affine.c_min, affine.c_max, rng);
  const double offset = uniform(affine.e_min, affine.e_max, rng);
  std::vector<double> noise;
  if (affine.noise_sigma > 0.0) {
    std::normal_distribution<double> gauss(0.0, affine.noise_sigma);
    noise.resize(static_cast<std::size_t>(s.size()));
    for (double& v : noise) v = gauss(rng);
  }
  return build_global_affine_instance(s, std::move(sample.omega), scale, offset, std::move(noise));
}

double window_value(WindowShape shape, int k, int half) {
  const int ak = std::abs(k);
  if (ak > half) {
    return 0.0;
  }
  switch (shape) {
    case WindowShape::kRectangular:
      return 1.0;
    case WindowShape::kTriangular:
      return 1.0 - static_cast<double>(ak) / (half + 1);
    case WindowShape::kParzen: {
      const double length = 2.0 * half + 1.0;
      const double x = ak / (length / 2.0);
      if (ak <= length / 4.0) {
        return 1.0 - 6.0 * x * x + 6.0 * x * x * x;
      }
      return 2.0 * (1.0 - x) * (1.0 - x) * (1.0 - x);
    }
    case WindowShape::kFlatTop: {
      if (half == 0) {
        return 1.0;
      }
      double value = 0.0;
      double peak = 0.0;
      for (std::size_t i = 0; i < kFlatTop.size(); ++i) {
        value += kFlatTop[i] * std::cos(static_cast<double>(i) * std::numbers::pi * ak / half);
        peak += kFlatTop[i];
      }
      return value / peak;
    }
  }
  throw ConfigError("unknown window shape");
}

TimeSeries window_component(int z, int center, int width, int n) {
  if (z < 1 || z > 4) {
    throw ConfigError("window shape must be 1 (Parzen), 2 (rectangular), 3 (triangular) or 4 (flat-top)");
  }
  if (width < 1 || n < 1 || center < 1 || center > n) {
    throw ConfigError("window needs width >= 1 and a centre inside the series");
  }
  const int half = width / 2;
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int i = std::max(1, center - half); i <= std::min(n, center + half); ++i) {
    out[static_cast<std::size_t>(i - 1)] = window_value(static_cast<WindowShape>(z), i - center, half);
  }
  return TimeSeries(std::move(out));
}

ComponentConfig ComponentConfig::defaults(int n, int n_components, double amp_sigma) {
  ComponentConfig cfg;
  cfg.n = n;
  cfg.n_components = n_components;
  cfg.w_min = std::max(1, n / (2 * n_components));
  cfg.w_max = std::max(cfg.w_min, n / n_components);
  cfg.i_min = 1;
  cfg.i_max = n;
  cfg.amp_sigma = amp_sigma;
  return cfg;
}

void ComponentConfig::validate() const {
  if (n < 1 || n_components < 1) {
    throw ConfigError("component simulation needs n >= 1 and at least one component");
  }
  if (z_min < 1 || z_min > z_max || z_max > 4) {
    throw ConfigError("component shapes must satisfy 1 <= z_min <= z_max <= 4");
  }
  if (w_min < 1 || w_min > w_max) {
    throw ConfigError("component widths must satisfy 1 <= w_min <= w_max");
  }
  if (i_min < 1 || i_min > i_max || i_max > n) {
    throw ConfigError("component locations must satisfy 1 <= i_min <= i_max <= n");
  }
  if (!(amp_sigma >= 0.0) || !std::isfinite(amp_mean)) {
    throw ConfigError("amplitude parameters need a finite mean and sigma >= 0");
  }
}

ComponentInstance component_instance(const ComponentConfig& cfg, Rng& rng) {
  cfg.validate();
  const auto count = static_cast<std::size_t>(cfg.n_components);
  std::vector<ComponentDraw> draws(count);
  for (auto& d : draws) {
    d.shape = uniform_int(cfg.z_min, cfg.z_max, rng);
    d.width_s = uniform_int(cfg.w_min, cfg.w_max, rng);
    d.width_t = uniform_int(cfg.w_min, cfg.w_max, rng);
    d.amp_s = folded_normal(cfg.amp_mean, cfg.amp_sigma, rng);
    d.amp_t = folded_normal(cfg.amp_mean, cfg.amp_sigma, rng);
  }
  std::vector<int> cs(count), ct(count);
  do {
    for (auto& c : cs) c = uniform_int(cfg.i_min, cfg.i_max, rng);
    for (auto& c : ct) c = uniform_int(cfg.i_min, cfg.i_max, rng);
  } while (!same_order(cs, ct));
  for (std::size_t j = 0; j < count; ++j) {
    draws[j].center_s = cs[j];
    draws[j].center_t = ct[j];
  }
  return build_component_instance(cfg.n, std::move(draws));
}

ComponentInstance build_component_instance(int n, std::vector<ComponentDraw> components) {
  if (n < 1 || components.empty()) {
    throw ConfigError("component instance needs n >= 1 and at least one component");
  }
  std::vector<double> s(static_cast<std::size_t>(n), 0.0);
  std::vector<double> t(static_cast<std::size_t>(n), 0.0);
  for (const auto& c : components) {
    const auto ws = window_component(c.shape, c.center_s, c.width_s, n);
    const auto wt = window_component(c.shape, c.center_t, c.width_t, n);
    for (std::size_t i = 0; i < s.size(); ++i) {
      s[i] += c.amp_s * ws[i];
      t[i] += c.amp_t * wt[i];
    }
  }

  TrueAlignment truth;
  std::vector<bool> mask(static_cast<std::size_t>(n), false);
  for (int i = 1; i <= n; ++i) {
    const ComponentDraw* owner = nullptr;
    for (const auto& c : components) {
      const int half = c.width_s / 2;
      if (std::abs(i - c.center_s) > half) {
        continue;
      }
      if (owner == nullptr) {
        owner = &c;
        continue;
      }
      const int d_new = std::abs(i - c.center_s);
      const int d_old = std::abs(i - owner->center_s);
      if (d_new < d_old || (d_new == d_old && c.center_s < owner->center_s)) {
        owner = &c;
      }
    }
    if (owner == nullptr) {
      continue;
    }
    mask[static_cast<std::size_t>(i - 1)] = true;
    const int half_s = owner->width_s / 2;
    const int half_t = owner->width_t / 2;
    const double relative = half_s > 0 ? static_cast<double>(i - owner->center_s) / half_s : 0.0;
    const int b = static_cast<int>(std::lround(owner->center_t + relative * half_t));
    truth.pairs.push_back({i, std::clamp(b, 1, n)});
  }
  truth.component_mask = std::move(mask);
  return {TimeSeries(std::move(s)), TimeSeries(std::move(t)), std::move(truth), std::move(components)};
}

TimeSeries smooth_base_series(int n, Rng& rng) {
  if (n < 1) {
    throw ConfigError("series length must be at least 1");
  }
  const double phase = uniform(0.0, 2.0 * std::numbers::pi, rng);
  const double cycles = uniform(0.5, 2.0, rng);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    v[static_cast<std::size_t>(i)] = 0.5 * std::sin(phase + 2.0 * std::numbers::pi * cycles * i / n);
  }
  for (int bump = 0; bump < 3; ++bump) {
    const double center = uniform(0.1 * n, 0.9 * n, rng);
    const double width = uniform(n / 30.0, n / 8.0, rng);
    const double height = uniform(0.5, 2.0, rng) * (uniform(0.0, 1.0, rng) < 0.3 ? -1.0 : 1.0);
    for (int i = 0; i < n; ++i) {
      const double x = (i - center) / width;
      v[static_cast<std::size_t>(i)] += height * std::exp(-0.5 * x * x);
    }
  }
  return TimeSeries(std::move(v));
}

bool is_monotone_truth(const TrueAlignment& truth, int n, int m) {
  for (std::size_t k = 0; k < truth.pairs.size(); ++k) {
    const auto& p = truth.pairs[k];
    if (p.a < 1 || p.a > n || p.b < 1 || p.b > m) {
      return false;
    }
    if (k > 0) {
      const auto& q = truth.pairs[k - 1];
      if (!(q < p) || p.b < q.b) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace ardtw
