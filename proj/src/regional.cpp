#include "ardtw/regional.hpp"

#include <algorithm>
#include <string>

#include "ardtw/errors.hpp"
#include "windows.hpp"

namespace ardtw {

namespace {

struct SquaredSum {
  double sum = 0.0;
  void reset() noexcept { sum = 0.0; }
  void add(double x, double y) noexcept { sum += pointwise_cost(x, y); }
  void remove(double x, double y) noexcept { sum -= pointwise_cost(x, y); }
};

void check_cell(const TimeSeries& s, const TimeSeries& t, int a, int b) {
  if (a < 1 || a > s.size() || b < 1 || b > t.size()) {
    throw ConfigError("cell (" + std::to_string(a) + ", " + std::to_string(b) + ") is out of range");
  }
}

}  // namespace

void RegionConfig::validate() const {
  if (half_width < 0) {
    throw ConfigError("region half-width must be non-negative");
  }
}

RegionalCost regional_cost_direct(const TimeSeries& s, const TimeSeries& t, int a, int b, int w_h) {
  RegionConfig{w_h}.validate();
  check_cell(s, t, a, b);
  const auto r = detail::window_offsets(a, b, s.size(), t.size(), w_h);
  double sum = 0.0;
  for (int w = r.lo; w <= r.hi; ++w) {
    sum += pointwise_cost(s.at(a + w), t.at(b + w));
  }
  return {sum / r.count(), r.count()};
}

CostTable regional_cost_table(const TimeSeries& s, const TimeSeries& t, BandConfig band, int w_h) {
  RegionConfig{w_h}.validate();
  CostTable table(s.size(), t.size(), band);
  detail::fill_windowed<SquaredSum>(s, t, w_h, table, [](const SquaredSum& acc, int count) {
    // Removing terms can leave a rounding-sized negative residue.
    return std::max(acc.sum, 0.0) / count;
  });
  return table;
}

AlignResult rdtw(const TimeSeries& s, const TimeSeries& t, BandConfig band, int w_h) {
  auto dp = dp_align(regional_cost_table(s, t, band, w_h));
  return {std::move(dp.path), dp.total};
}

}  // namespace ardtw
