#include "ardtw/evaluate.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "ardtw/combined.hpp"
#include "ardtw/errors.hpp"
#include "ardtw/regional.hpp"
#include "parallel.hpp"

namespace ardtw {

namespace {

constexpr std::array<std::pair<MethodKind, std::string_view>, 6> kMethodNames = {{
    {MethodKind::kDtw, "DTW"},
    {MethodKind::kAdtw, "ADTW"},
    {MethodKind::kRdtw, "RDTW"},
    {MethodKind::kGardtw, "GARDTW"},
    {MethodKind::kLardtw, "LARDTW"},
    {MethodKind::kDtwZnorm, "DTW_ZNORM"},
}};

MethodResult from_align(AlignResult r) { return {std::move(r.path), r.measure, std::nullopt, 0}; }

MethodResult from_em(EmResult r) { return {std::move(r.path), r.measure, r.params, r.iterations}; }

double score(const TrueAlignment& truth, std::span<const IndexPair> p, int n, const std::vector<bool>* mask) {
  if (n < 1) {
    throw ConfigError("series length must be positive");
  }
  // b-values of p per s-index, sorted for nearest lookup.
  std::vector<std::vector<int>> by_a(static_cast<std::size_t>(n) + 1);
  for (const auto& q : p) {
    if (q.a < 1 || q.a > n) {
      throw DataError("path index " + std::to_string(q.a) + " is out of range");
    }
    by_a[static_cast<std::size_t>(q.a)].push_back(q.b);
  }
  for (auto& v : by_a) std::sort(v.begin(), v.end());

  double sum = 0.0;
  for (const auto& tp : truth.pairs) {
    if (tp.a < 1 || tp.a > n) {
      throw DataError("truth index " + std::to_string(tp.a) + " is out of range");
    }
    if (mask != nullptr && !(*mask)[static_cast<std::size_t>(tp.a - 1)]) {
      continue;
    }
    const auto& bs = by_a[static_cast<std::size_t>(tp.a)];
    if (bs.empty()) {
      throw DataError("path has no match for s-index " + std::to_string(tp.a));
    }
    const auto it = std::lower_bound(bs.begin(), bs.end(), tp.b);
    int best = std::numeric_limits<int>::max();
    if (it != bs.end()) best = *it - tp.b;
    if (it != bs.begin()) best = std::min(best, tp.b - *std::prev(it));
    sum += best;
  }
  if (n < 2) {
    return 0.0;
  }
  return sum / (static_cast<double>(n) * (n - 1) / 2.0);
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::string_view method_name(MethodKind method) noexcept {
  for (const auto& [kind, name] : kMethodNames) {
    if (kind == method) return name;
  }
  return "?";
}

MethodKind parse_method(std::string_view name) {
  std::string upper(name);
  for (char& ch : upper) {
    ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (ch == '-') ch = '_';
  }
  for (const auto& [kind, known] : kMethodNames) {
    if (upper == known) return kind;
  }
  throw ConfigError("unknown method '" + std::string(name) + "'");
}

bool uses_region(MethodKind method) noexcept {
  return method == MethodKind::kRdtw || method == MethodKind::kGardtw || method == MethodKind::kLardtw;
}

bool uses_affine(MethodKind method) noexcept {
  return method == MethodKind::kAdtw || method == MethodKind::kGardtw;
}

std::vector<MethodKind> all_methods() {
  std::vector<MethodKind> out;
  for (const auto& entry : kMethodNames) out.push_back(entry.first);
  return out;
}

MethodResult run_method(MethodKind method, const TimeSeries& s, const TimeSeries& t, const MethodParams& params) {
  switch (method) {
    case MethodKind::kDtw:
      return from_align(dtw(s, t, params.band));
    case MethodKind::kAdtw:
      return from_em(adtw(s, t, params.band, params.bounds, params.em));
    case MethodKind::kRdtw:
      return from_align(rdtw(s, t, params.band, params.w_h));
    case MethodKind::kGardtw:
      return from_em(gardtw(s, t, params.band, params.w_h, params.bounds, params.em));
    case MethodKind::kLardtw:
      return from_align(lardtw(s, t, params.band, params.w_h, params.bounds));
    case MethodKind::kDtwZnorm:
      return from_align(dtw(z_normalize(s), z_normalize(t), params.band));
  }
  throw InvariantError("unhandled method kind");
}

TimeSeries z_normalize(const TimeSeries& s, WarningSink* warnings) {
  const auto v = s.values();
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  double peak = 0.0;
  for (const double x : v) {
    ss += (x - mean) * (x - mean);
    peak = std::max(peak, std::abs(x));
  }
  const double sd = std::sqrt(ss / n);
  std::vector<double> out(v.size(), 0.0);
  if (sd <= 1e-12 * peak || sd == 0.0) {
    if (warnings != nullptr) warnings->warn("constant series normalised to all zeros");
    return TimeSeries(std::move(out));
  }
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - mean) / sd;
  return TimeSeries(std::move(out));
}

double mg_score(const TrueAlignment& truth, std::span<const IndexPair> p, int n) {
  return score(truth, p, n, nullptr);
}

double mc_score(const TrueAlignment& truth, std::span<const IndexPair> p, int n) {
  if (!truth.component_mask) {
    throw ConfigError("component score needs a truth with a component mask");
  }
  if (static_cast<int>(truth.component_mask->size()) != n) {
    throw DataError("component mask length does not match the series");
  }
  return score(truth, p, n, &*truth.component_mask);
}

double two_level_average(const std::vector<std::vector<double>>& scores_per_dataset) {
  double total = 0.0;
  int datasets = 0;
  for (const auto& scores : scores_per_dataset) {
    if (scores.empty()) continue;
    total += std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(scores.size());
    ++datasets;
  }
  if (datasets == 0) {
    throw DataError("no scores to average");
  }
  return total / datasets;
}

void LabeledDataset::add(TimeSeries s, std::string label) {
  series.push_back(std::move(s));
  labels.push_back(std::move(label));
}

void LabeledDataset::validate() const {
  if (series.size() != labels.size()) {
    throw DataError("dataset has " + std::to_string(series.size()) + " series but " +
                    std::to_string(labels.size()) + " labels");
  }
  for (std::size_t i = 1; i < series.size(); ++i) {
    if (series[i].size() != series.front().size()) {
      throw DataError("series " + std::to_string(i + 1) + " has length " + std::to_string(series[i].size()) +
                      ", expected " + std::to_string(series.front().size()));
    }
  }
}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> indices) const {
  LabeledDataset out;
  for (const std::size_t i : indices) out.add(series.at(i), labels.at(i));
  return out;
}

OneNnResult one_nn(const LabeledDataset& train, const LabeledDataset& test, MethodKind method,
                   const MethodParams& params, int jobs) {
  if (train.empty()) {
    throw DataError("1-NN needs a non-empty training set");
  }
  train.validate();
  test.validate();
  OneNnResult out;
  out.decisions.resize(test.size());
  detail::parallel_for(test.size(), jobs, [&](std::size_t i) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < train.size(); ++j) {
      const double d = run_method(method, test.series[i], train.series[j], params).measure;
      if (d < best_d || j == 0) {
        best_d = d;
        best = j;
      }
    }
    out.decisions[i] = {i, best, train.labels[best], test.labels[i], best_d};
  });
  std::size_t wrong = 0;
  for (const auto& d : out.decisions) wrong += d.predicted != d.actual ? 1 : 0;
  out.error_rate = test.empty() ? 0.0 : static_cast<double>(wrong) / static_cast<double>(test.size());
  return out;
}

TuningGrid TuningGrid::defaults() {
  TuningGrid grid;
  for (int k = 0; k <= 10; ++k) grid.wq_ratios.push_back(0.05 * k);
  for (int k = 1; k <= 10; ++k) grid.wh_ratios.push_back(0.05 * k);
  return grid;
}

void TuningGrid::validate() const {
  if (wq_ratios.empty() || wh_ratios.empty()) {
    throw ConfigError("tuning grids must not be empty");
  }
  for (const auto& grid : {wq_ratios, wh_ratios}) {
    for (const double r : grid) {
      if (!(r >= 0.0 && r <= 0.5)) {
        throw ConfigError("grid ratios must lie in [0, 0.5]");
      }
    }
  }
}

int region_samples(MethodKind method, double ratio, int n) {
  if (!uses_region(method)) return 0;
  const int w_h = ratio_to_samples(ratio, n);
  return method == MethodKind::kLardtw ? std::max(1, w_h) : w_h;
}

std::array<std::vector<std::size_t>, 2> stratified_folds(const LabeledDataset& data, std::uint64_t seed,
                                                         WarningSink* warnings) {
  std::map<std::string, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < data.labels.size(); ++i) by_class[data.labels[i]].push_back(i);
  Rng rng(seed);
  std::array<std::vector<std::size_t>, 2> folds;
  for (auto& [label, members] : by_class) {
    if (members.size() == 1 && warnings != nullptr) {
      warnings->warn("class '" + label + "' has a single item; it is placed in fold 1");
    }
    std::shuffle(members.begin(), members.end(), rng);
    for (std::size_t k = 0; k < members.size(); ++k) folds[k % 2].push_back(members[k]);
  }
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

TuneResult tune_params(const LabeledDataset& train, MethodKind method, const TuningGrid& grid,
                       const MethodParams& base, std::uint64_t seed, int jobs) {
  grid.validate();
  train.validate();
  if (train.empty()) {
    throw DataError("tuning needs a non-empty training set");
  }
  WarningSink warnings;
  const auto folds = stratified_folds(train, seed, &warnings);
  if (folds[1].empty()) {
    throw DataError("cross-validation needs at least one class with two items");
  }
  const LabeledDataset first = train.subset(folds[0]);
  const LabeledDataset second = train.subset(folds[1]);
  const int n = train.length();

  const auto wq_ratios = sorted_unique(grid.wq_ratios);
  const auto wh_ratios = uses_region(method) ? sorted_unique(grid.wh_ratios) : std::vector<double>{0.0};

  TuneResult best;
  best.cv_error = std::numeric_limits<double>::infinity();
  int last_wq = -1;
  for (const double rq : wq_ratios) {
    const int w_q = ratio_to_samples(rq, n);
    if (w_q == last_wq) continue;  // ratios rounding to the same band
    last_wq = w_q;
    int last_wh = -1;
    for (const double rh : wh_ratios) {
      const int w_h = region_samples(method, rh, n);
      if (w_h == last_wh) continue;
      last_wh = w_h;
      MethodParams params = base;
      params.band = BandConfig{w_q};
      params.w_h = w_h;
      const double err = 0.5 * (one_nn(first, second, method, params, jobs).error_rate +
                                one_nn(second, first, method, params, jobs).error_rate);
      if (err < best.cv_error) {
        best.cv_error = err;
        best.w_q = w_q;
        best.w_h = w_h;
        best.wq_ratio = rq;
        best.wh_ratio = uses_region(method) ? rh : 0.0;
      }
    }
  }
  best.warnings = std::move(warnings.messages);
  return best;
}

WinLoss win_loss(std::span<const double> errors_a, std::span<const double> errors_b) {
  if (errors_a.size() != errors_b.size()) {
    throw ConfigError("win-loss needs equally long error lists");
  }
  WinLoss out;
  for (std::size_t i = 0; i < errors_a.size(); ++i) {
    if (errors_a[i] < errors_b[i]) {
      ++out.wins;
    } else if (errors_a[i] > errors_b[i]) {
      ++out.losses;
    } else {
      ++out.ties;
    }
  }
  const double num = out.wins + 0.5 * out.ties;
  const double den = out.losses + 0.5 * out.ties;
  out.ratio = den == 0.0 ? std::numeric_limits<double>::infinity() : num / den;
  return out;
}

std::vector<double> average_ranks(const std::vector<std::vector<double>>& errors) {
  const std::size_t k = errors.size();
  if (k == 0) return {};
  const std::size_t datasets = errors.front().size();
  for (const auto& row : errors) {
    if (row.size() != datasets) {
      throw ConfigError("rank matrix rows must have equal length");
    }
  }
  std::vector<double> ranks(k, 0.0);
  if (datasets == 0) return ranks;
  std::vector<std::size_t> order(k);
  for (std::size_t d = 0; d < datasets; ++d) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return errors[x][d] < errors[y][d]; });
    for (std::size_t lo = 0; lo < k;) {
      std::size_t hi = lo;
      while (hi + 1 < k && errors[order[hi + 1]][d] == errors[order[lo]][d]) ++hi;
      // Positions lo..hi (0-based) share the mean of ranks lo+1..hi+1.
      const double shared = 0.5 * static_cast<double>(lo + hi) + 1.0;
      for (std::size_t r = lo; r <= hi; ++r) ranks[order[r]] += shared;
      lo = hi + 1;
    }
  }
  for (double& r : ranks) r /= static_cast<double>(datasets);
  return ranks;
}

bool significantly_different(double rank_a, double rank_b, double critical_difference) noexcept {
  return std::abs(rank_a - rank_b) > critical_difference;
}

}  // namespace ardtw
