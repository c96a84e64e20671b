#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "ardtw/core_dp.hpp"
#include "ardtw/evaluate.hpp"

namespace ardtw {

/// Shortest decimal text that parses back to exactly `x`.
[[nodiscard]] std::string format_double(double x);

/// Parses a whole field as a finite double; nullopt otherwise.
[[nodiscard]] std::optional<double> parse_double(std::string_view field);

enum class Delimiter { kComma, kTab, kSpace };

[[nodiscard]] char delimiter_char(Delimiter d) noexcept;

/// UCR layout: one record per line, class label first, then the values.
/// The delimiter (comma, tab or whitespace) is detected from the first
/// record and used for the whole file. Blank lines are skipped. Errors name
/// `source` and the 1-based line number.
[[nodiscard]] LabeledDataset parse_dataset(std::istream& in, const std::string& source = "<input>");
[[nodiscard]] LabeledDataset load_dataset(const std::filesystem::path& path);

void write_dataset(std::ostream& out, const LabeledDataset& data, Delimiter delimiter = Delimiter::kComma);
void save_dataset(const std::filesystem::path& path, const LabeledDataset& data,
                  Delimiter delimiter = Delimiter::kComma);

/// A bare series: every numeric field of the file, in reading order, with
/// any mix of commas, tabs, spaces and newlines between values.
[[nodiscard]] TimeSeries parse_series(std::istream& in, const std::string& source = "<input>");
[[nodiscard]] TimeSeries load_series(const std::filesystem::path& path);

/// One "a,b" pair per line.
void write_path(std::ostream& out, std::span<const IndexPair> path, Delimiter delimiter = Delimiter::kComma);
[[nodiscard]] AlignmentPath parse_path(std::istream& in, const std::string& source = "<input>");

[[nodiscard]] std::string read_file(const std::filesystem::path& path);
/// Writes `content` to `path`, creating parent directories.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace ardtw
