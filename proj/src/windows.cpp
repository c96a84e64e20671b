#include "windows.hpp"

namespace ardtw::detail {

PathMoments path_window_moments(const TimeSeries& s, const TimeSeries& t, std::span<const IndexPair> p,
                                int w_h) {
  const int n = s.size();
  const int m = t.size();
  PathMoments moments;
  for (const auto& [a, b] : p) {
    const OffsetRange r = window_offsets(a, b, n, m, w_h);
    double st = 0.0;
    double ss = 0.0;
    double tt = 0.0;
    double t2 = 0.0;
    for (int w = r.lo; w <= r.hi; ++w) {
      const double x = s.at(a + w);
      const double y = t.at(b + w);
      st += x * y;
      ss += x;
      tt += y;
      t2 += y * y;
    }
    const double count = r.count();
    moments.sum_st += st / count;
    moments.sum_s += ss / count;
    moments.sum_t += tt / count;
    moments.sum_tt += t2 / count;
  }
  moments.count = static_cast<double>(p.size());
  return moments;
}

double windowed_affine_objective(const TimeSeries& s, const TimeSeries& t, std::span<const IndexPair> p,
                                 AffineParams params, int w_h) {
  const int n = s.size();
  const int m = t.size();
  double total = 0.0;
  for (const auto& [a, b] : p) {
    const OffsetRange r = window_offsets(a, b, n, m, w_h);
    double sum = 0.0;
    for (int w = r.lo; w <= r.hi; ++w) {
      sum += pointwise_cost(s.at(a + w), params.scale * t.at(b + w) + params.offset);
    }
    total += sum / r.count();
  }
  return total;
}

}  // namespace ardtw::detail
