#pragma once

// Window bookkeeping shared by the regional, global-affine and local-affine
// costs. A window around the match (a, b) holds the offsets w in
// [-w_h, w_h] for which both s[a + w] and t[b + w] exist.

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "ardtw/affine.hpp"
#include "ardtw/core_dp.hpp"

namespace ardtw::detail {

struct OffsetRange {
  int lo;
  int hi;
  [[nodiscard]] int count() const noexcept { return hi - lo + 1; }
};

[[nodiscard]] inline OffsetRange window_offsets(int a, int b, int n, int m, int w_h) noexcept {
  return {std::max({-w_h, 1 - a, 1 - b}), std::min({w_h, n - a, m - b})};
}

// Path sums of window-mean moments. With w_h = 0 these are the plain path
// sums of s*t, s, t and t^2 (each term is added to 0.0 and divided by 1).
struct PathMoments {
  double sum_st = 0.0;
  double sum_s = 0.0;
  double sum_t = 0.0;
  double sum_tt = 0.0;
  double count = 0.0;
};

[[nodiscard]] PathMoments path_window_moments(const TimeSeries& s, const TimeSeries& t,
                                              std::span<const IndexPair> p, int w_h);

// sum_k (1 / w_k) sum_w (s[a_k + w] - (c * t[b_k + w] + e))^2
[[nodiscard]] double windowed_affine_objective(const TimeSeries& s, const TimeSeries& t,
                                               std::span<const IndexPair> p, AffineParams params, int w_h);

// Sliding-window state is recomputed from scratch every
// max(kReanchorInterval, kReanchorWindows * window length) rows, bounding
// drift from repeated add/remove while keeping the rebuild cost a small
// fraction of the sliding updates.
inline constexpr int kReanchorInterval = 256;
inline constexpr int kReanchorWindows = 4;

// Visits every in-band cell (a, b), 1-based, of a band with effective
// half-width w in row-major order, passing the window statistics of that
// cell. Each diagonal keeps its own statistics; moving down one row adds the
// arriving pair and removes the departing one. Within a row the cells that
// add (or remove) form one contiguous run, so the updates are plain loops.
//
// Stats must provide reset(), add(x, y) and remove(x, y); the visitor is
// called as visit(a, b, stats, count).
template <class Stats, class Visit>
void for_each_window(const TimeSeries& s, const TimeSeries& t, int w_h, int w, Visit&& visit) {
  const int n = s.size();
  const int m = t.size();
  const double* sv = s.values().data();
  const double* tv = t.values().data();
  // Exact recomputation is as cheap as sliding for a single-sample window and
  // keeps w_h = 0 bit-identical to the pointwise cost.
  const int reanchor = w_h == 0 ? 1 : std::max(kReanchorInterval, kReanchorWindows * (2 * w_h + 1));

  // Indexed by diagonal delta = b - a, offset by w.
  std::vector<Stats> diag(static_cast<std::size_t>(2 * w + 1));
  Stats* const state = diag.data() + w;

  auto rebuild = [&](int a, int delta) {
    Stats& st = state[delta];
    st.reset();
    const int lo = std::max({0, -delta, a - w_h});
    const int hi = std::min({n - 1, m - 1 - delta, a + w_h});
    for (int i = lo; i <= hi; ++i) st.add(sv[i], tv[i + delta]);
  };

  for (int a = 0; a < n; ++a) {
    const int d_first = std::max(0, a - w) - a;  // delta of the first in-band cell
    const int d_last = std::min(m - 1, a + w) - a;
    if (a % reanchor == 0) {
      for (int d = d_first; d <= d_last; ++d) rebuild(a, d);
    } else {
      int d_begin = d_first;
      if (d_first == -a) {  // column 0 starts a new diagonal
        rebuild(a, d_first);
        ++d_begin;
      }
      const int arrive = a + w_h;
      if (arrive <= n - 1) {
        const double x = sv[arrive];
        const int d_end = std::min(d_last, m - 1 - arrive);
        for (int d = d_begin; d <= d_end; ++d) state[d].add(x, tv[arrive + d]);
      }
      const int leave = a - 1 - w_h;
      if (leave >= 0) {
        const double x = sv[leave];
        for (int d = std::max(d_begin, -leave); d <= d_last; ++d) state[d].remove(x, tv[leave + d]);
      }
    }
    const int row_hi = std::min(n - 1, a + w_h);
    const int row_lo = std::max(0, a - w_h);
    for (int d = d_first; d <= d_last; ++d) {
      const int count = std::min(row_hi, m - 1 - d) - std::max(row_lo, -d) + 1;
      visit(a + 1, a + d + 1, static_cast<const Stats&>(state[d]), count);
    }
  }
}

// Writes value(stats, count) into every in-band cell of `table`.
template <class Stats, class Value>
void fill_windowed(const TimeSeries& s, const TimeSeries& t, int w_h, CostTable& table, Value&& value) {
  double* cells = table.raw().data();
  for_each_window<Stats>(s, t, w_h, table.half_width(), [&](int a, int b, const Stats& stats, int count) {
    cells[table.index(a, b)] = value(stats, count);
  });
}

}  // namespace ardtw::detail
