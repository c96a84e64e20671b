#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ardtw/affine.hpp"
#include "ardtw/core_dp.hpp"
#include "ardtw/simulate.hpp"

namespace ardtw {

/// Collects non-fatal diagnostics (degenerate inputs, fallback choices).
struct WarningSink {
  std::vector<std::string> messages;
  void warn(std::string message) { messages.push_back(std::move(message)); }
};

enum class MethodKind { kDtw, kAdtw, kRdtw, kGardtw, kLardtw, kDtwZnorm };

[[nodiscard]] std::string_view method_name(MethodKind method) noexcept;
/// Accepts the names printed by method_name(), case-insensitively.
[[nodiscard]] MethodKind parse_method(std::string_view name);
[[nodiscard]] bool uses_region(MethodKind method) noexcept;
[[nodiscard]] bool uses_affine(MethodKind method) noexcept;
[[nodiscard]] std::vector<MethodKind> all_methods();

/// Everything a method may need; fields a method does not use are ignored.
struct MethodParams {
  BandConfig band;
  int w_h = 0;
  ScalingBounds bounds;
  EmConfig em;
};

struct MethodResult {
  AlignmentPath path;
  double measure = 0.0;
  std::optional<AffineParams> params;  // ADTW, GARDTW
  int iterations = 0;                  // ADTW, GARDTW
};

/// Aligns s (the reference) with t using `method`.
[[nodiscard]] MethodResult run_method(MethodKind method, const TimeSeries& s, const TimeSeries& t,
                                      const MethodParams& params);

/// Subtracts the mean and divides by the population standard deviation. A
/// series without variance maps to all zeros and is reported to `warnings`.
[[nodiscard]] TimeSeries z_normalize(const TimeSeries& s, WarningSink* warnings = nullptr);

/// Mean displacement of `p` from the true matches: for every truth pair
/// (i, b_t), the distance from b_t to the nearest b with (i, b) in p, summed
/// and divided by n(n-1)/2.
[[nodiscard]] double mg_score(const TrueAlignment& truth, std::span<const IndexPair> p, int n);

/// mg_score restricted to s-indices flagged in the truth's component mask.
[[nodiscard]] double mc_score(const TrueAlignment& truth, std::span<const IndexPair> p, int n);

/// Mean of per-dataset means.
[[nodiscard]] double two_level_average(const std::vector<std::vector<double>>& scores_per_dataset);

struct LabeledDataset {
  std::vector<TimeSeries> series;
  std::vector<std::string> labels;

  [[nodiscard]] std::size_t size() const noexcept { return series.size(); }
  [[nodiscard]] bool empty() const noexcept { return series.empty(); }
  [[nodiscard]] int length() const noexcept { return series.empty() ? 0 : series.front().size(); }
  void add(TimeSeries s, std::string label);
  /// Throws DataError on label/series count mismatch or ragged lengths.
  void validate() const;
  [[nodiscard]] LabeledDataset subset(std::span<const std::size_t> indices) const;
};

struct NeighborDecision {
  std::size_t test_index = 0;
  std::size_t neighbor_index = 0;
  std::string predicted;
  std::string actual;
  double distance = 0.0;
};

struct OneNnResult {
  double error_rate = 0.0;
  std::vector<NeighborDecision> decisions;
};

/// 1-NN classification of every test item; the first training item wins
/// distance ties. Distances run on `jobs` threads.
[[nodiscard]] OneNnResult one_nn(const LabeledDataset& train, const LabeledDataset& test, MethodKind method,
                                 const MethodParams& params, int jobs = 1);

/// Grids of w_q / n and w_h / n.
struct TuningGrid {
  std::vector<double> wq_ratios;
  std::vector<double> wh_ratios;

  /// w_q / n in {0, 0.05, ..., 0.5}; w_h / n in {0.05, ..., 0.5}.
  [[nodiscard]] static TuningGrid defaults();
  void validate() const;
};

struct TuneResult {
  int w_q = 0;
  int w_h = 0;
  double wq_ratio = 0.0;
  double wh_ratio = 0.0;
  double cv_error = 0.0;
  std::vector<std::string> warnings;
};

/// Region half-width for a grid ratio; LARDTW is kept at w_h >= 1.
[[nodiscard]] int region_samples(MethodKind method, double ratio, int n);

/// Picks (w_q, w_h) minimising 2-fold stratified cross-validated 1-NN error
/// on `train`. Ties go to the smaller w_q, then the smaller w_h. `base`
/// supplies the bounds and EM settings.
[[nodiscard]] TuneResult tune_params(const LabeledDataset& train, MethodKind method, const TuningGrid& grid,
                                     const MethodParams& base, std::uint64_t seed, int jobs = 1);

/// Two stratified folds: per class (labels in sorted order), indices are
/// shuffled with `seed` and dealt alternately, starting with fold 0.
[[nodiscard]] std::array<std::vector<std::size_t>, 2> stratified_folds(const LabeledDataset& data,
                                                                       std::uint64_t seed,
                                                                       WarningSink* warnings = nullptr);

struct WinLoss {
  double ratio = 0.0;
  int wins = 0;
  int ties = 0;
  int losses = 0;
};

/// Counts a < b as a win for a. ratio = (wins + ties/2) / (losses + ties/2),
/// +infinity when the denominator is zero.
[[nodiscard]] WinLoss win_loss(std::span<const double> errors_a, std::span<const double> errors_b);

inline constexpr double kCriticalDifference = 2.356;

/// Mean rank of each method (rows) over datasets (columns); rank 1 is the
/// lowest error and tied errors share the mean of their ranks.
[[nodiscard]] std::vector<double> average_ranks(const std::vector<std::vector<double>>& errors);

[[nodiscard]] bool significantly_different(double rank_a, double rank_b,
                                           double critical_difference = kCriticalDifference) noexcept;

}  // namespace ardtw
