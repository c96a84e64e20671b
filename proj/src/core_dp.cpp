#include "ardtw/core_dp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "ardtw/errors.hpp"

namespace ardtw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> checked(std::vector<double> values) {
  if (values.empty()) {
    throw ConfigError("time series must contain at least one value");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw ConfigError("time series value " + std::to_string(i + 1) + " is not finite");
    }
  }
  return values;
}

}  // namespace

TimeSeries::TimeSeries(std::vector<double> values) : values_(checked(std::move(values))) {}

TimeSeries::TimeSeries(std::initializer_list<double> values)
    : TimeSeries(std::vector<double>(values)) {}

int BandConfig::band_width() const noexcept {
  if (half_width >= kUnbounded / 2) {
    return kUnbounded;
  }
  return 1 + 2 * half_width;
}

int BandConfig::effective(int n, int m) const noexcept {
  const int widened = std::max(half_width, std::abs(n - m));
  return std::min(widened, std::max(n, m) - 1);
}

int ratio_to_samples(double ratio, int n) {
  if (!(ratio >= 0.0) || !std::isfinite(ratio)) {
    throw ConfigError("window ratio must be a non-negative finite number");
  }
  return static_cast<int>(std::lround(ratio * n));
}

CostTable::CostTable(int n, int m, BandConfig band)
    : n_(n), m_(m), w_(0), stride_(0) {
  if (n < 1 || m < 1) {
    throw ConfigError("series lengths must be at least 1");
  }
  if (band.half_width < 0) {
    throw ConfigError("band half-width must be non-negative");
  }
  w_ = band.effective(n, m);
  stride_ = static_cast<std::size_t>(2 * w_ + 1);
  cells_.assign(stride_ * static_cast<std::size_t>(n), kInf);
}

int CostTable::first_col(int a) const noexcept { return std::max(1, a - w_); }

int CostTable::last_col(int a) const noexcept { return std::min(m_, a + w_); }

bool CostTable::in_band(int a, int b) const noexcept {
  return a >= 1 && a <= n_ && b >= 1 && b <= m_ && std::abs(a - b) <= w_;
}

DpResult dp_align(const CostTable& cost) {
  const int n = cost.rows();
  const int m = cost.cols();
  const int w = cost.half_width();

  // Accumulated costs with one padding slot on each side of every row, so
  // left/up/diagonal neighbours outside the band read +inf without checks.
  const std::size_t stride = cost.stride() + 2;
  std::vector<double> acc(stride * static_cast<std::size_t>(n), kInf);
  auto slot = [&](int a, int b) {
    return static_cast<std::size_t>(a - 1) * stride + static_cast<std::size_t>(b - a + w + 1);
  };

  for (int b = 1; b <= cost.last_col(1); ++b) {
    const double c = cost(1, b);
    acc[slot(1, b)] = b == 1 ? c : c + acc[slot(1, b) - 1];
  }
  for (int a = 2; a <= n; ++a) {
    const int lo = cost.first_col(a);
    const int hi = cost.last_col(a);
    std::size_t cell = slot(a, lo);
    const double* c = &cost.raw()[cost.index(a, lo)];
    for (int b = lo; b <= hi; ++b, ++cell, ++c) {
      // (a-1, b-1) shares the diagonal slot one row up; (a-1, b) is one slot right of it.
      double best = b > 1 ? acc[cell - stride] : kInf;
      const double left = acc[cell - 1];
      const double up = acc[cell - stride + 1];
      if (left < best) best = left;
      if (up < best) best = up;
      acc[cell] = *c + best;
    }
  }

  DpResult result;
  result.total = acc[slot(n, m)];

  auto value = [&](int a, int b) {
    if (a < 1 || b < 1 || std::abs(a - b) > w || b > m) {
      return kInf;
    }
    return acc[slot(a, b)];
  };

  int a = n;
  int b = m;
  result.path.push_back({a, b});
  while (a > 1 || b > 1) {
    const double diag = value(a - 1, b - 1);
    const double left = value(a, b - 1);
    const double up = value(a - 1, b);
    if (diag <= left && diag <= up) {
      --a;
      --b;
    } else if (left <= up) {
      --b;
    } else {
      --a;
    }
    result.path.push_back({a, b});
  }
  std::reverse(result.path.begin(), result.path.end());
  return result;
}

CostTable pointwise_cost_table(const TimeSeries& s, const TimeSeries& t, BandConfig band) {
  CostTable table(s.size(), t.size(), band);
  const auto sv = s.values();
  const auto tv = t.values();
  for (int a = 1; a <= s.size(); ++a) {
    const double x = sv[static_cast<std::size_t>(a - 1)];
    const int lo = table.first_col(a);
    const int hi = table.last_col(a);
    double* out = &table.raw()[table.index(a, lo)];
    for (int b = lo; b <= hi; ++b) {
      *out++ = pointwise_cost(x, tv[static_cast<std::size_t>(b - 1)]);
    }
  }
  return table;
}

AlignResult dtw(const TimeSeries& s, const TimeSeries& t, BandConfig band) {
  auto dp = dp_align(pointwise_cost_table(s, t, band));
  return {std::move(dp.path), dp.total};
}

bool validate_path(std::span<const IndexPair> p, int n, int m) noexcept {
  if (p.empty() || p.front() != IndexPair{1, 1} || p.back() != IndexPair{n, m}) {
    return false;
  }
  for (std::size_t k = 1; k < p.size(); ++k) {
    const int da = p[k].a - p[k - 1].a;
    const int db = p[k].b - p[k - 1].b;
    if (da < 0 || db < 0 || da > 1 || db > 1 || (da == 0 && db == 0)) {
      return false;
    }
  }
  return true;
}

double path_cost(const TimeSeries& s, const TimeSeries& t, std::span<const IndexPair> p) {
  double total = 0.0;
  for (const auto& [a, b] : p) {
    total += pointwise_cost(s.at(a), t.at(b));
  }
  return total;
}

}  // namespace ardtw
