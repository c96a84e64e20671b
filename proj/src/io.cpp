#include "ardtw/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "ardtw/errors.hpp"

namespace ardtw {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, Delimiter d) {
  std::vector<std::string_view> out;
  if (d == Delimiter::kSpace) {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i >= line.size()) break;
      const std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
      out.push_back(line.substr(start, i - start));
    }
    return out;
  }
  const char sep = delimiter_char(d);
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

Delimiter detect(std::string_view line) {
  if (line.find(',') != std::string_view::npos) return Delimiter::kComma;
  if (line.find('\t') != std::string_view::npos) return Delimiter::kTab;
  return Delimiter::kSpace;
}

[[noreturn]] void fail(const std::string& source, int line, const std::string& what) {
  throw DataError(source + ":" + std::to_string(line) + ": " + what);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot open '" + path.string() + "' for reading");
  }
  return in;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::optional<double> parse_double(std::string_view field) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  if (field.empty()) return std::nullopt;
  double value = 0.0;
  const auto r = std::from_chars(field.data(), field.data() + field.size(), value);
  if (r.ec != std::errc{} || r.ptr != field.data() + field.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

char delimiter_char(Delimiter d) noexcept {
  switch (d) {
    case Delimiter::kComma:
      return ',';
    case Delimiter::kTab:
      return '\t';
    case Delimiter::kSpace:
      return ' ';
  }
  return ',';
}

LabeledDataset parse_dataset(std::istream& in, const std::string& source) {
  LabeledDataset data;
  std::optional<Delimiter> delimiter;
  std::string raw;
  int line_no = 0;
  int first_line = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    if (!delimiter) delimiter = detect(line);
    const auto fields = split(line, *delimiter);
    if (fields.size() < 2) fail(source, line_no, "record needs a label and at least one value");
    if (fields[0].empty()) fail(source, line_no, "empty class label");
    std::vector<double> values;
    values.reserve(fields.size() - 1);
    for (std::size_t k = 1; k < fields.size(); ++k) {
      const auto v = parse_double(fields[k]);
      if (!v) fail(source, line_no, "field " + std::to_string(k + 1) + " ('" + std::string(fields[k]) +
                                        "') is not a finite number");
      values.push_back(*v);
    }
    if (!data.empty() && static_cast<int>(values.size()) != data.length()) {
      fail(source, line_no, "record has " + std::to_string(values.size()) + " values but line " +
                                std::to_string(first_line) + " has " + std::to_string(data.length()));
    }
    if (data.empty()) first_line = line_no;
    data.add(TimeSeries(std::move(values)), std::string(fields[0]));
  }
  if (data.empty()) {
    throw DataError(source + ": no records found");
  }
  return data;
}

LabeledDataset load_dataset(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_dataset(in, path.string());
}

void write_dataset(std::ostream& out, const LabeledDataset& data, Delimiter delimiter) {
  data.validate();
  const char sep = delimiter_char(delimiter);
  for (std::size_t i = 0; i < data.size(); ++i) {
    out << data.labels[i];
    for (const double x : data.series[i].values()) out << sep << format_double(x);
    out << '\n';
  }
}

void save_dataset(const std::filesystem::path& path, const LabeledDataset& data, Delimiter delimiter) {
  std::ostringstream out;
  write_dataset(out, data, delimiter);
  write_file(path, out.str());
}

TimeSeries parse_series(std::istream& in, const std::string& source) {
  std::vector<double> values;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    for (char& ch : line) {
      if (ch == ',') ch = ' ';
    }
    for (const auto field : split(trim(line), Delimiter::kSpace)) {
      const auto v = parse_double(field);
      if (!v) fail(source, line_no, "'" + std::string(field) + "' is not a finite number");
      values.push_back(*v);
    }
  }
  if (values.empty()) {
    throw DataError(source + ": no values found");
  }
  return TimeSeries(std::move(values));
}

TimeSeries load_series(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_series(in, path.string());
}

void write_path(std::ostream& out, std::span<const IndexPair> path, Delimiter delimiter) {
  const char sep = delimiter_char(delimiter);
  for (const auto& p : path) out << p.a << sep << p.b << '\n';
}

AlignmentPath parse_path(std::istream& in, const std::string& source) {
  AlignmentPath path;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    const auto fields = split(line, detect(line));
    int ab[2] = {0, 0};
    if (fields.size() != 2) fail(source, line_no, "expected two indices");
    for (int k = 0; k < 2; ++k) {
      const auto f = fields[static_cast<std::size_t>(k)];
      const auto r = std::from_chars(f.data(), f.data() + f.size(), ab[k]);
      if (r.ec != std::errc{} || r.ptr != f.data() + f.size()) fail(source, line_no, "index is not an integer");
    }
    path.push_back({ab[0], ab[1]});
  }
  return path;
}

std::string read_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw DataError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw DataError("cannot open '" + path.string() + "' for writing");
  }
  out << content;
  if (!out) {
    throw DataError("failed writing '" + path.string() + "'");
  }
}

}  // namespace ardtw
