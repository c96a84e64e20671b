#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace ardtw {

/// A finite, non-empty sequence of real amplitudes.
///
/// Interfaces index series 1-based (`at(1)` is the first sample); storage
/// is 0-based and exposed through `values()`.
class TimeSeries {
 public:
  explicit TimeSeries(std::vector<double> values);
  TimeSeries(std::initializer_list<double> values);

  [[nodiscard]] int size() const noexcept { return static_cast<int>(values_.size()); }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] double at(int i) const { return values_[static_cast<std::size_t>(i - 1)]; }
  [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }

  bool operator==(const TimeSeries&) const = default;

 private:
  std::vector<double> values_;
};

/// One match between s[a] and t[b], 1-based.
struct IndexPair {
  int a = 1;
  int b = 1;
  auto operator<=>(const IndexPair&) const = default;
};

using AlignmentPath = std::vector<IndexPair>;

/// Sakoe-Chiba band: s[a] may only be matched to t[b] with |a - b| <= half_width.
struct BandConfig {
  static constexpr int kUnbounded = std::numeric_limits<int>::max();

  int half_width = kUnbounded;

  [[nodiscard]] static BandConfig unbounded() noexcept { return {}; }
  [[nodiscard]] int band_width() const noexcept;

  // Half-width actually used for lengths n, m: widened to |n - m| so the
  // corner (n, m) is reachable, and capped at max(n, m) - 1.
  [[nodiscard]] int effective(int n, int m) const noexcept;
};

/// Converts a w/n ratio from a tuning grid into a sample count.
[[nodiscard]] int ratio_to_samples(double ratio, int n);

/// Per-cell costs stored for the in-band cells of an n x m grid.
///
/// Row a holds the cells (a, b) with |a - b| <= half_width, laid out by
/// diagonal offset, so cells on one diagonal share a slot index across rows.
class CostTable {
 public:
  CostTable(int n, int m, BandConfig band);

  [[nodiscard]] int rows() const noexcept { return n_; }
  [[nodiscard]] int cols() const noexcept { return m_; }
  [[nodiscard]] int half_width() const noexcept { return w_; }

  [[nodiscard]] int first_col(int a) const noexcept;
  [[nodiscard]] int last_col(int a) const noexcept;
  [[nodiscard]] bool in_band(int a, int b) const noexcept;

  [[nodiscard]] double operator()(int a, int b) const noexcept { return cells_[index(a, b)]; }
  [[nodiscard]] double& operator()(int a, int b) noexcept { return cells_[index(a, b)]; }

  // Raw slot for (a, b): (a - 1) * stride + (b - a + half_width).
  [[nodiscard]] std::size_t index(int a, int b) const noexcept {
    return static_cast<std::size_t>(a - 1) * stride_ + static_cast<std::size_t>(b - a + w_);
  }
  [[nodiscard]] std::size_t stride() const noexcept { return stride_; }
  [[nodiscard]] std::span<double> raw() noexcept { return cells_; }
  [[nodiscard]] std::span<const double> raw() const noexcept { return cells_; }

 private:
  int n_;
  int m_;
  int w_;
  std::size_t stride_;
  std::vector<double> cells_;
};

struct DpResult {
  AlignmentPath path;
  double total = 0.0;
};

/// Squared difference, the base pointwise distance.
[[nodiscard]] inline double pointwise_cost(double x, double y) noexcept {
  const double d = x - y;
  return d * d;
}

/// Minimum-cost DTW path through the in-band cells of `cost`.
///
/// Ties in the recurrence and in backtracking prefer the diagonal
/// predecessor, then left (b - 1), then up (a - 1).
[[nodiscard]] DpResult dp_align(const CostTable& cost);

/// Fills a table from `cost_fn(a, b)` (1-based) and aligns it.
template <class CostFn>
[[nodiscard]] DpResult dp_align(CostFn&& cost_fn, int n, int m, BandConfig band) {
  CostTable table(n, m, band);
  for (int a = 1; a <= n; ++a) {
    for (int b = table.first_col(a); b <= table.last_col(a); ++b) {
      table(a, b) = cost_fn(a, b);
    }
  }
  return dp_align(table);
}

/// Squared-difference costs of every in-band cell.
[[nodiscard]] CostTable pointwise_cost_table(const TimeSeries& s, const TimeSeries& t, BandConfig band);

struct AlignResult {
  AlignmentPath path;
  double measure = 0.0;
};

[[nodiscard]] AlignResult dtw(const TimeSeries& s, const TimeSeries& t, BandConfig band = {});

/// True iff `p` satisfies the boundary, monotonicity and step-size constraints.
[[nodiscard]] bool validate_path(std::span<const IndexPair> p, int n, int m) noexcept;

/// Sum of squared differences along `p`.
[[nodiscard]] double path_cost(const TimeSeries& s, const TimeSeries& t, std::span<const IndexPair> p);

}  // namespace ardtw
