#include "ardtw/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <json.hpp>
#include <numeric>
#include <ostream>
#include <sstream>

#include "ardtw/bench.hpp"
#include "ardtw/errors.hpp"
#include "ardtw/evaluate.hpp"
#include "ardtw/io.hpp"
#include "ardtw/simulate.hpp"

namespace ardtw::cli {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

// ---------------------------------------------------------------- options

struct MethodOptions {
  std::vector<std::string> methods;
  int wq = 0;
  int wh = 0;
  double wq_ratio = 0.0;
  double wh_ratio = 0.0;
  double c_min = 0.2;
  double c_max = 5.0;
  double d_stop = 1e-5;
  int max_iters = 100;
  CLI::Option* wq_opt = nullptr;
  CLI::Option* wh_opt = nullptr;
  CLI::Option* wq_ratio_opt = nullptr;
  CLI::Option* wh_ratio_opt = nullptr;

  [[nodiscard]] bool has_wq() const { return wq_opt->count() > 0; }
  [[nodiscard]] bool has_wh() const { return wh_opt->count() > 0; }
  [[nodiscard]] bool has_wq_ratio() const { return wq_ratio_opt->count() > 0; }
  [[nodiscard]] bool has_wh_ratio() const { return wh_ratio_opt->count() > 0; }

  [[nodiscard]] ScalingBounds bounds() const {
    const ScalingBounds b{c_min, c_max};
    b.validate();
    return b;
  }
  [[nodiscard]] EmConfig em() const {
    const EmConfig e{d_stop, max_iters};
    e.validate();
    return e;
  }

  // Methods in command-line order; "all" expands to every method.
  [[nodiscard]] std::vector<MethodKind> kinds() const {
    std::vector<MethodKind> out;
    for (const auto& name : methods) {
      if (name == "all" || name == "ALL") {
        for (const auto m : all_methods()) out.push_back(m);
      } else {
        out.push_back(parse_method(name));
      }
    }
    if (out.empty()) out.push_back(MethodKind::kDtw);
    std::vector<MethodKind> unique;
    for (const auto m : out) {
      if (std::find(unique.begin(), unique.end(), m) == unique.end()) unique.push_back(m);
    }
    return unique;
  }

  // Window sizes for series of length n; ratios are relative to n.
  [[nodiscard]] MethodParams params(int n) const {
    MethodParams p;
    if (has_wq()) {
      p.band = BandConfig{wq};
    } else if (has_wq_ratio()) {
      p.band = BandConfig{ratio_to_samples(wq_ratio, n)};
    }
    if (has_wh()) {
      p.w_h = wh;
    } else if (has_wh_ratio()) {
      p.w_h = ratio_to_samples(wh_ratio, n);
    }
    p.bounds = bounds();
    p.em = em();
    return p;
  }
};

void add_method_options(CLI::App& app, MethodOptions& o, bool windows) {
  app.add_option("--method", o.methods,
                 "DTW, ADTW, RDTW, GARDTW, LARDTW or DTW_ZNORM (repeatable where several are allowed)");
  if (windows) {
    o.wq_opt = app.add_option("--wq", o.wq, "Sakoe-Chiba half-width in samples")->check(CLI::NonNegativeNumber);
    o.wq_ratio_opt =
        app.add_option("--wq-ratio", o.wq_ratio, "Sakoe-Chiba half-width as a fraction of the length")
            ->check(CLI::NonNegativeNumber);
    o.wh_opt = app.add_option("--wh", o.wh, "region half-width in samples")->check(CLI::NonNegativeNumber);
    o.wh_ratio_opt = app.add_option("--wh-ratio", o.wh_ratio, "region half-width as a fraction of the length")
                         ->check(CLI::NonNegativeNumber);
    o.wq_opt->excludes(o.wq_ratio_opt);
    o.wh_opt->excludes(o.wh_ratio_opt);
  }
  app.add_option("--cmin", o.c_min, "lower bound on the fitted scale")->capture_default_str();
  app.add_option("--cmax", o.c_max, "upper bound on the fitted scale")->capture_default_str();
  app.add_option("--dstop", o.d_stop, "EM stops when the objective improves by less than this")
      ->capture_default_str();
  app.add_option("--max-iters", o.max_iters, "EM iteration cap")->capture_default_str();
}

struct OutputOptions {
  std::string out_dir = ".";
  std::string format = "csv";

  [[nodiscard]] Delimiter delimiter() const { return format == "tsv" ? Delimiter::kTab : Delimiter::kComma; }
  [[nodiscard]] fs::path table(const std::string& stem) const { return fs::path(out_dir) / (stem + "." + format); }
  [[nodiscard]] fs::path file(const std::string& name) const { return fs::path(out_dir) / name; }
};

void add_output_options(CLI::App& app, OutputOptions& o) {
  app.add_option("--out-dir", o.out_dir, "directory for output files")->capture_default_str();
  app.add_option("--format", o.format, "delimited output format")
      ->check(CLI::IsMember({"csv", "tsv"}))
      ->capture_default_str();
}

// ---------------------------------------------------------------- helpers

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json window_json(BandConfig band) {
  return band.half_width == BandConfig::kUnbounded ? Json(nullptr) : Json(band.half_width);
}

double population_sd(const TimeSeries& s) {
  const auto v = s.values();
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double ss = 0.0;
  for (const double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size()));
}

// Delimited table writer: fields joined by the output delimiter.
class Table {
 public:
  explicit Table(Delimiter d) : sep_(delimiter_char(d)) {}
  template <class... Fields>
  void row(const Fields&... fields) {
    bool first = true;
    ((out_ << (first ? "" : std::string(1, sep_)) << field(fields), first = false), ...);
    out_ << '\n';
  }
  [[nodiscard]] std::string str() const { return out_.str(); }

 private:
  static std::string field(double x) { return format_double(x); }
  static std::string field(int x) { return std::to_string(x); }
  static std::string field(std::size_t x) { return std::to_string(x); }
  static std::string field(const std::string& x) { return x; }
  static std::string field(std::string_view x) { return std::string(x); }
  static std::string field(const char* x) { return x; }

  char sep_;
  std::ostringstream out_;
};

std::vector<double> json_doubles(const Json& j) { return j.get<std::vector<double>>(); }

// ---------------------------------------------------------------- align

struct AlignArgs {
  std::string series_a;
  std::string series_b;
  MethodOptions method;
  OutputOptions output;
};

void cmd_align(const AlignArgs& args, std::ostream& out) {
  const auto kinds = args.method.kinds();
  if (kinds.size() != 1) {
    throw ConfigError("align takes exactly one --method");
  }
  const MethodKind method = kinds.front();
  const auto s = load_series(args.series_a);
  const auto t = load_series(args.series_b);
  const MethodParams params = args.method.params(s.size());

  const auto start = std::chrono::steady_clock::now();
  const auto result = run_method(method, s, t, params);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!validate_path(result.path, s.size(), t.size())) {
    throw InvariantError("alignment path failed validation");
  }

  std::ostringstream path_text;
  write_path(path_text, result.path, args.output.delimiter());

  Table segments(args.output.delimiter());
  segments.row("a", "s_a", "b", "t_b");
  for (const auto& [a, b] : result.path) segments.row(a, s.at(a), b, t.at(b));

  const BandConfig effective{params.band.effective(s.size(), t.size())};
  Json summary;
  summary["method"] = method_name(method);
  summary["n"] = s.size();
  summary["m"] = t.size();
  summary["w_q"] = window_json(params.band);
  summary["w_q_effective"] = effective.half_width;
  summary["w_h"] = uses_region(method) ? Json(params.w_h) : Json(nullptr);
  summary["c_min"] = params.bounds.c_min;
  summary["c_max"] = params.bounds.c_max;
  summary["d_stop"] = params.em.d_stop;
  summary["max_iters"] = params.em.max_iters;
  summary["measure"] = result.measure;
  summary["path_length"] = result.path.size();
  if (result.params) {
    summary["iterations"] = result.iterations;
    summary["scale"] = result.params->scale;
    summary["offset"] = result.params->offset;
  }
  Json timing;
  timing["method"] = method_name(method);
  timing["wall_time_seconds"] = seconds;

  write_file(args.output.table("path"), path_text.str());
  write_file(args.output.table("segments"), segments.str());
  write_file(args.output.file("summary.json"), dump(summary));
  write_file(args.output.file("timing.json"), dump(timing));

  out << method_name(method) << " measure " << format_double(result.measure) << ", path length "
      << result.path.size();
  if (result.params) {
    out << ", scale " << format_double(result.params->scale) << ", offset " << format_double(result.params->offset)
        << ", iterations " << result.iterations;
  }
  out << ", " << format_double(seconds * 1e3) << " ms\n";
}

// ---------------------------------------------------------------- simulate

struct SimOutput {
  LabeledDataset series;
  std::vector<TrueAlignment> truths;
};

void write_simulation(const SimOutput& sim, const Json& manifest, const OutputOptions& output, bool masks) {
  std::ostringstream series;
  write_dataset(series, sim.series, output.delimiter());
  Table truth(output.delimiter());
  truth.row("instance", "a", "b");
  Table mask(output.delimiter());
  mask.row("instance", "a");
  for (std::size_t k = 0; k < sim.truths.size(); ++k) {
    for (const auto& [a, b] : sim.truths[k].pairs) truth.row(k + 1, a, b);
    if (sim.truths[k].component_mask) {
      const auto& flags = *sim.truths[k].component_mask;
      for (std::size_t i = 0; i < flags.size(); ++i) {
        if (flags[i]) mask.row(k + 1, i + 1);
      }
    }
  }
  write_file(output.table("series"), series.str());
  write_file(output.table("truth"), truth.str());
  if (masks) write_file(output.table("mask"), mask.str());
  write_file(output.file("manifest.json"), dump(manifest));
}

struct GlobalSimArgs {
  std::string base;
  int length = 200;
  int count = 10;
  double p_match = 0.6;
  double p_delete = 0.2;
  double p_insert = 0.2;
  double warping_prob = 0.4;
  double scale_min = 0.2;
  double scale_max = 5.0;
  double offset_min = 0.0;
  double offset_max = 0.0;
  double noise_level = 0.0;
  std::uint64_t seed = 0;
  OutputOptions output;
  CLI::Option* warping_prob_opt = nullptr;
  CLI::Option* offset_min_opt = nullptr;
  CLI::Option* offset_max_opt = nullptr;
};

Json global_instance_json(const TimeSeries& base, const GlobalAffineInstance& inst) {
  Json j;
  j["base"] = std::vector<double>(base.values().begin(), base.values().end());
  j["omega"] = inst.omega;
  j["scale"] = inst.scale;
  j["offset"] = inst.offset;
  j["noise"] = inst.noise;
  return j;
}

void add_pair(SimOutput& sim, const TimeSeries& s, const TimeSeries& t, TrueAlignment truth) {
  sim.series.add(s, "s");
  sim.series.add(t, "t");
  sim.truths.push_back(std::move(truth));
}

void cmd_simulate_global(const GlobalSimArgs& args, std::ostream& out) {
  if (args.count < 1) throw ConfigError("--count must be at least 1");
  const WarpConfig warp = args.warping_prob_opt->count() > 0
                              ? WarpConfig::from_warping_probability(args.warping_prob)
                              : WarpConfig{args.p_match, args.p_delete, args.p_insert};
  warp.validate();
  if (!(args.noise_level >= 0.0)) throw ConfigError("--noise-level must be non-negative");
  std::optional<TimeSeries> fixed_base;
  if (!args.base.empty()) fixed_base = load_series(args.base);

  Rng rng(args.seed);
  SimOutput sim;
  Json instances = Json::array();
  for (int k = 0; k < args.count; ++k) {
    const TimeSeries base = fixed_base ? *fixed_base : smooth_base_series(args.length, rng);
    const double sigma = population_sd(base);
    GlobalAffineConfig affine;
    affine.c_min = args.scale_min;
    affine.c_max = args.scale_max;
    affine.e_min = args.offset_min_opt->count() > 0 ? args.offset_min : -sigma;
    affine.e_max = args.offset_max_opt->count() > 0 ? args.offset_max : sigma;
    affine.noise_sigma = args.noise_level * sigma;
    const auto inst = global_affine_instance(base, warp, affine, rng);
    add_pair(sim, base, inst.t, inst.truth);
    instances.push_back(global_instance_json(base, inst));
  }

  Json manifest;
  manifest["kind"] = "global-affine";
  manifest["seed"] = args.seed;
  manifest["count"] = args.count;
  manifest["warp"] = {{"p_match", warp.p_match}, {"p_delete", warp.p_delete}, {"p_insert", warp.p_insert}};
  manifest["scale_range"] = {args.scale_min, args.scale_max};
  manifest["offset_range"] = args.offset_min_opt->count() > 0 || args.offset_max_opt->count() > 0
                                 ? Json{args.offset_min, args.offset_max}
                                 : Json("sigma");
  manifest["noise_level"] = args.noise_level;
  manifest["instances"] = std::move(instances);
  write_simulation(sim, manifest, args.output, false);
  out << "wrote " << args.count << " global-affine pairs to " << args.output.out_dir << "\n";
}

struct ComponentSimArgs {
  int length = 400;
  int components = 4;
  int z_min = 1;
  int z_max = 4;
  int width_min = 0;  // 0: length / (2 * components)
  int width_max = 0;  // 0: length / components
  int loc_min = 1;
  int loc_max = 0;  // 0: length
  double amp_mean = 1.0;
  double amp_sigma = 0.5;
  int count = 10;
  std::uint64_t seed = 0;
  OutputOptions output;
};

Json component_json(const ComponentDraw& c) {
  return {{"shape", c.shape},       {"width_s", c.width_s}, {"width_t", c.width_t}, {"center_s", c.center_s},
          {"center_t", c.center_t}, {"amp_s", c.amp_s},     {"amp_t", c.amp_t}};
}

void cmd_simulate_component(const ComponentSimArgs& args, std::ostream& out) {
  if (args.count < 1) throw ConfigError("--count must be at least 1");
  if (args.length < 1 || args.components < 1) throw ConfigError("--length and --components must be positive");
  ComponentConfig cfg = ComponentConfig::defaults(args.length, args.components, args.amp_sigma);
  cfg.z_min = args.z_min;
  cfg.z_max = args.z_max;
  if (args.width_min > 0) cfg.w_min = args.width_min;
  if (args.width_max > 0) cfg.w_max = args.width_max;
  cfg.i_min = args.loc_min;
  if (args.loc_max > 0) cfg.i_max = args.loc_max;
  cfg.amp_mean = args.amp_mean;
  cfg.validate();

  Rng rng(args.seed);
  SimOutput sim;
  Json instances = Json::array();
  for (int k = 0; k < args.count; ++k) {
    const auto inst = component_instance(cfg, rng);
    add_pair(sim, inst.s, inst.t, inst.truth);
    Json comps = Json::array();
    for (const auto& c : inst.components) comps.push_back(component_json(c));
    instances.push_back({{"components", std::move(comps)}});
  }

  Json manifest;
  manifest["kind"] = "component";
  manifest["seed"] = args.seed;
  manifest["count"] = args.count;
  manifest["length"] = cfg.n;
  manifest["config"] = {{"components", cfg.n_components},
                        {"z_range", {cfg.z_min, cfg.z_max}},
                        {"width_range", {cfg.w_min, cfg.w_max}},
                        {"location_range", {cfg.i_min, cfg.i_max}},
                        {"amp_mean", cfg.amp_mean},
                        {"amp_sigma", cfg.amp_sigma}};
  manifest["instances"] = std::move(instances);
  write_simulation(sim, manifest, args.output, true);
  out << "wrote " << args.count << " component pairs to " << args.output.out_dir << "\n";
}

struct ReplayArgs {
  std::string manifest;
  OutputOptions output;
};

// Rebuilds every instance from the recorded draws; no RNG is involved.
void cmd_simulate_replay(const ReplayArgs& args, std::ostream& out) {
  Json manifest;
  try {
    manifest = Json::parse(read_file(args.manifest));
    SimOutput sim;
    const std::string kind = manifest.at("kind").get<std::string>();
    if (kind == "global-affine") {
      for (const auto& inst : manifest.at("instances")) {
        const TimeSeries base(json_doubles(inst.at("base")));
        const auto rebuilt =
            build_global_affine_instance(base, inst.at("omega").get<std::vector<int>>(), inst.at("scale").get<double>(),
                                         inst.at("offset").get<double>(), json_doubles(inst.at("noise")));
        add_pair(sim, base, rebuilt.t, rebuilt.truth);
      }
    } else if (kind == "component") {
      const int n = manifest.at("length").get<int>();
      for (const auto& inst : manifest.at("instances")) {
        std::vector<ComponentDraw> draws;
        for (const auto& c : inst.at("components")) {
          draws.push_back({c.at("shape").get<int>(), c.at("width_s").get<int>(), c.at("width_t").get<int>(),
                           c.at("center_s").get<int>(), c.at("center_t").get<int>(), c.at("amp_s").get<double>(),
                           c.at("amp_t").get<double>()});
        }
        const auto rebuilt = build_component_instance(n, std::move(draws));
        add_pair(sim, rebuilt.s, rebuilt.t, rebuilt.truth);
      }
    } else {
      throw DataError("unknown simulation kind '" + kind + "'");
    }
    write_simulation(sim, manifest, args.output, kind == "component");
    out << "replayed " << sim.truths.size() << " " << kind << " pairs into " << args.output.out_dir << "\n";
  } catch (const nlohmann::json::exception& e) {
    throw DataError(args.manifest + ": malformed manifest: " + e.what());
  } catch (const ConfigError& e) {
    throw DataError(args.manifest + ": " + e.what());
  }
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::vector<std::string> train;
  std::vector<std::string> test;
  std::string errors_table;
  std::vector<double> wq_grid;
  std::vector<double> wh_grid;
  double critical_difference = kCriticalDifference;
  std::uint64_t seed = 0;
  int jobs = 1;
  MethodOptions method;
  OutputOptions output;
};

std::string dataset_name(const std::string& path) {
  std::string stem = fs::path(path).stem().string();
  for (const std::string suffix : {"_TRAIN", "_train"}) {
    if (stem.size() > suffix.size() && stem.ends_with(suffix)) stem.resize(stem.size() - suffix.size());
  }
  return stem;
}

struct ErrorsTable {
  std::vector<std::string> datasets;
  std::vector<std::string> methods;
  std::vector<std::vector<double>> errors;  // methods x datasets
};

ErrorsTable load_errors_table(const std::string& path) {
  // Header "dataset,<method>,...", then one row of errors per dataset.
  const std::string text = read_file(path);
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  ErrorsTable table;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    const char sep = s.find(',') != std::string::npos ? ',' : '\t';
    std::stringstream ss(s);
    std::string field;
    while (std::getline(ss, field, sep)) {
      const auto a = field.find_first_not_of(" \t\r");
      const auto b = field.find_last_not_of(" \t\r");
      out.push_back(a == std::string::npos ? "" : field.substr(a, b - a + 1));
    }
    return out;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split(line);
    if (table.methods.empty()) {
      if (fields.size() < 2) throw DataError(path + ":" + std::to_string(line_no) + ": header needs methods");
      table.methods.assign(fields.begin() + 1, fields.end());
      table.errors.assign(table.methods.size(), {});
      continue;
    }
    if (fields.size() != table.methods.size() + 1) {
      throw DataError(path + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(table.methods.size() + 1) + " fields");
    }
    table.datasets.push_back(fields[0]);
    for (std::size_t k = 0; k < table.methods.size(); ++k) {
      const auto v = parse_double(fields[k + 1]);
      if (!v) throw DataError(path + ":" + std::to_string(line_no) + ": '" + fields[k + 1] + "' is not a number");
      table.errors[k].push_back(*v);
    }
  }
  if (table.datasets.empty()) throw DataError(path + ": no datasets in errors table");
  return table;
}

Json comparison_json(const ErrorsTable& table, double critical_difference, const OutputOptions& output,
                     std::ostream& out) {
  Json j;
  const std::size_t k = table.methods.size();
  Table errors(output.delimiter());
  {
    std::ostringstream header;
    header << "dataset";
    for (const auto& m : table.methods) header << delimiter_char(output.delimiter()) << m;
    std::string rows = header.str() + "\n";
    for (std::size_t d = 0; d < table.datasets.size(); ++d) {
      rows += table.datasets[d];
      for (std::size_t m = 0; m < k; ++m) rows += delimiter_char(output.delimiter()) + format_double(table.errors[m][d]);
      rows += "\n";
    }
    write_file(output.table("errors"), rows);
  }
  if (k < 2) return j;

  Table wl(output.delimiter());
  wl.row("method_a", "method_b", "wins", "ties", "losses", "ratio");
  Json wl_json = Json::array();
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (a == b) continue;
      const auto r = win_loss(table.errors[a], table.errors[b]);
      wl.row(table.methods[a], table.methods[b], r.wins, r.ties, r.losses, format_ratio(r.ratio));
      wl_json.push_back({{"method_a", table.methods[a]},
                         {"method_b", table.methods[b]},
                         {"wins", r.wins},
                         {"ties", r.ties},
                         {"losses", r.losses},
                         {"ratio", std::isinf(r.ratio) ? Json(nullptr) : Json(r.ratio)},
                         {"ratio_text", format_ratio(r.ratio)}});
      if (a < b) out << table.methods[a] << " vs " << table.methods[b] << ": " << r.wins << "/" << r.ties << "/" << r.losses
          << " ratio " << format_ratio(r.ratio) << "\n";
    }
  }
  const auto ranks = average_ranks(table.errors);
  Table rk(output.delimiter());
  rk.row("method", "average_rank");
  Json rank_json = Json::array();
  for (std::size_t m = 0; m < k; ++m) {
    rk.row(table.methods[m], ranks[m]);
    rank_json.push_back({{"method", table.methods[m]}, {"average_rank", ranks[m]}});
    out << table.methods[m] << " average rank " << format_double(ranks[m]) << "\n";
  }
  Json significant = Json::array();
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      if (significantly_different(ranks[a], ranks[b], critical_difference)) {
        significant.push_back({table.methods[a], table.methods[b]});
      }
    }
  }
  write_file(output.table("win_loss"), wl.str());
  write_file(output.table("ranks"), rk.str());
  j["win_loss"] = std::move(wl_json);
  j["average_ranks"] = std::move(rank_json);
  j["critical_difference"] = critical_difference;
  j["significant_pairs"] = std::move(significant);
  return j;
}

void cmd_evaluate(const EvaluateArgs& args, std::ostream& out) {
  Json report;
  if (!args.errors_table.empty()) {
    if (!args.train.empty() || !args.test.empty()) {
      throw ConfigError("--errors-table cannot be combined with --train/--test");
    }
    const auto table = load_errors_table(args.errors_table);
    report["mode"] = "errors-table";
    report["datasets"] = table.datasets;
    report["methods"] = table.methods;
    const Json comparison = comparison_json(table, args.critical_difference, args.output, out);
    for (const auto& [key, value] : comparison.items()) report[key] = value;
    write_file(args.output.file("report.json"), dump(report));
    return;
  }

  if (args.train.empty() || args.train.size() != args.test.size()) {
    throw ConfigError("give one --test for every --train (at least one pair)");
  }
  const auto kinds = args.method.kinds();
  const bool fixed = args.method.has_wq() || args.method.has_wh();
  TuningGrid grid = TuningGrid::defaults();
  if (!args.wq_grid.empty()) grid.wq_ratios = args.wq_grid;
  if (!args.wh_grid.empty()) grid.wh_ratios = args.wh_grid;
  if (args.method.has_wq_ratio()) grid.wq_ratios = {args.method.wq_ratio};
  if (args.method.has_wh_ratio()) grid.wh_ratios = {args.method.wh_ratio};
  if (!fixed) grid.validate();

  ErrorsTable table;
  for (const auto m : kinds) table.methods.emplace_back(method_name(m));
  table.errors.assign(kinds.size(), {});
  Table decisions(args.output.delimiter());
  decisions.row("dataset", "method", "test_index", "actual", "predicted", "neighbor_index", "distance");
  Json datasets = Json::array();

  for (std::size_t d = 0; d < args.train.size(); ++d) {
    const auto train = load_dataset(args.train[d]);
    const auto test = load_dataset(args.test[d]);
    if (train.length() != test.length()) {
      throw DataError("train and test series lengths differ for " + args.train[d]);
    }
    const std::string name = dataset_name(args.train[d]);
    table.datasets.push_back(name);
    Json methods = Json::array();
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      const MethodKind method = kinds[k];
      MethodParams params = args.method.params(train.length());
      Json entry;
      entry["method"] = method_name(method);
      if (fixed) {
        if (method == MethodKind::kLardtw) params.w_h = std::max(params.w_h, 1);
        entry["tuned"] = false;
      } else {
        const auto tuned = tune_params(train, method, grid, params, args.seed, args.jobs);
        params.band = BandConfig{tuned.w_q};
        params.w_h = tuned.w_h;
        entry["tuned"] = true;
        entry["wq_ratio"] = tuned.wq_ratio;
        entry["wh_ratio"] = uses_region(method) ? Json(tuned.wh_ratio) : Json(nullptr);
        entry["cv_error"] = tuned.cv_error;
        entry["warnings"] = tuned.warnings;
      }
      entry["w_q"] = window_json(params.band);
      entry["w_h"] = uses_region(method) ? Json(params.w_h) : Json(nullptr);
      const auto result = one_nn(train, test, method, params, args.jobs);
      entry["test_error"] = result.error_rate;
      table.errors[k].push_back(result.error_rate);
      for (const auto& dec : result.decisions) {
        decisions.row(name, method_name(method), dec.test_index + 1, dec.actual, dec.predicted,
                      dec.neighbor_index + 1, dec.distance);
      }
      out << name << " " << method_name(method) << ": test error " << format_double(result.error_rate)
          << " (w_q " << (params.band.half_width == BandConfig::kUnbounded ? std::string("none") : std::to_string(params.band.half_width));
      if (uses_region(method)) out << ", w_h " << params.w_h;
      out << ")\n";
      methods.push_back(std::move(entry));
    }
    datasets.push_back({{"name", name},
                        {"train", args.train[d]},
                        {"test", args.test[d]},
                        {"length", train.length()},
                        {"train_size", train.size()},
                        {"test_size", test.size()},
                        {"methods", std::move(methods)}});
  }

  report["mode"] = "classification";
  report["seed"] = args.seed;
  report["datasets"] = std::move(datasets);
  const Json comparison = comparison_json(table, args.critical_difference, args.output, out);
  for (const auto& [key, value] : comparison.items()) report[key] = value;
  write_file(args.output.table("decisions"), decisions.str());
  write_file(args.output.file("report.json"), dump(report));
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  std::string dataset;
  int length = 1000;
  int pairs = 20;
  int repeats = 10;
  double wq_ratio = 0.2;
  double wh_ratio = 0.2;
  std::uint64_t seed = 0;
  MethodOptions method;
  OutputOptions output;
};

void cmd_bench(const BenchArgs& args, std::ostream& out) {
  if (args.repeats < 1) throw ConfigError("--repeats must be at least 1");
  if (args.pairs < 2) throw ConfigError("--pairs must be at least 2");
  BenchConfig cfg;
  cfg.wq_ratio = args.wq_ratio;
  cfg.wh_ratio = args.wh_ratio;
  cfg.repeats = args.repeats;
  cfg.bounds = args.method.bounds();
  cfg.em = args.method.em();
  cfg.validate();

  Rng rng(args.seed);
  std::vector<TimeSeries> series;
  if (!args.dataset.empty()) {
    const auto data = load_dataset(args.dataset);
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(std::min<std::size_t>(order.size(), static_cast<std::size_t>(args.pairs)));
    for (const auto i : order) series.push_back(data.series[i]);
  } else {
    if (args.length < 2) throw ConfigError("--length must be at least 2");
    for (int k = 0; k < args.pairs; ++k) series.push_back(smooth_base_series(args.length, rng));
  }
  std::vector<MethodKind> kinds = args.method.methods.empty() ? all_methods() : args.method.kinds();
  const auto entries = benchmark_methods(series, kinds, cfg);

  Json report;
  report["series"] = series.size();
  report["length"] = series.front().size();
  report["repeats"] = args.repeats;
  report["wq_ratio"] = args.wq_ratio;
  report["wh_ratio"] = args.wh_ratio;
  Json methods = Json::array();
  out << "method      mean_ms  ratio_to_dtw  mean_iterations\n";
  for (const auto& e : entries) {
    methods.push_back({{"method", method_name(e.method)},
                       {"mean_seconds", e.mean_seconds},
                       {"ratio_to_dtw", e.ratio_to_dtw},
                       {"mean_iterations", uses_affine(e.method) ? Json(e.mean_iterations) : Json(nullptr)}});
    char line[128];
    std::snprintf(line, sizeof line, "%-10s %8.3f %13.2f", std::string(method_name(e.method)).c_str(),
                  e.mean_seconds * 1e3, e.ratio_to_dtw);
    out << line;
    if (uses_affine(e.method)) {
      std::snprintf(line, sizeof line, " %16.2f", e.mean_iterations);
      out << line;
    }
    out << "\n";
  }
  report["methods"] = std::move(methods);
  write_file(args.output.file("bench.json"), dump(report));
}

}  // namespace

std::string format_ratio(double ratio, int decimals) {
  if (std::isinf(ratio)) return ratio > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, ratio);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Affine and regional dynamic time warping", "ardtw"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "show help for every command");

  AlignArgs align_args;
  auto* align = app.add_subcommand("align", "align two series and write the path, segments and a summary");
  align->add_option("series_a", align_args.series_a, "reference series s (bare values)")->required();
  align->add_option("series_b", align_args.series_b, "series t (bare values)")->required();
  add_method_options(*align, align_args.method, true);
  add_output_options(*align, align_args.output);

  auto* simulate = app.add_subcommand("simulate", "generate synthetic pairs with known true alignments");
  simulate->require_subcommand(1);

  GlobalSimArgs global_args;
  auto* global = simulate->add_subcommand("global-affine", "random warp plus global scale and offset");
  global->add_option("--base", global_args.base, "base series file; default: a smooth random series per pair");
  global->add_option("--length", global_args.length, "length of generated base series")->capture_default_str();
  global->add_option("--count", global_args.count, "number of pairs")->capture_default_str();
  auto* pm = global->add_option("--p-match", global_args.p_match)->capture_default_str();
  auto* pd = global->add_option("--p-delete", global_args.p_delete)->capture_default_str();
  auto* pi = global->add_option("--p-insert", global_args.p_insert)->capture_default_str();
  global_args.warping_prob_opt =
      global->add_option("--warping-prob", global_args.warping_prob, "P_w: sets p_delete = p_insert = P_w / 2");
  global_args.warping_prob_opt->excludes(pm)->excludes(pd)->excludes(pi);
  global->add_option("--scale-min", global_args.scale_min)->capture_default_str();
  global->add_option("--scale-max", global_args.scale_max)->capture_default_str();
  global_args.offset_min_opt =
      global->add_option("--offset-min", global_args.offset_min, "default: minus the base standard deviation");
  global_args.offset_max_opt =
      global->add_option("--offset-max", global_args.offset_max, "default: the base standard deviation");
  global->add_option("--noise-level", global_args.noise_level, "noise sd as a multiple of the base sd")
      ->capture_default_str();
  global->add_option("--seed", global_args.seed)->capture_default_str();
  add_output_options(*global, global_args.output);

  ComponentSimArgs comp_args;
  auto* comp = simulate->add_subcommand("component", "superposed window-shaped components");
  comp->add_option("--length", comp_args.length)->capture_default_str();
  comp->add_option("--components", comp_args.components)->capture_default_str();
  comp->add_option("--z-min", comp_args.z_min, "1 Parzen, 2 rectangular, 3 triangular, 4 flat-top")
      ->capture_default_str();
  comp->add_option("--z-max", comp_args.z_max)->capture_default_str();
  comp->add_option("--width-min", comp_args.width_min, "default: length / (2 * components)");
  comp->add_option("--width-max", comp_args.width_max, "default: length / components");
  comp->add_option("--loc-min", comp_args.loc_min)->capture_default_str();
  comp->add_option("--loc-max", comp_args.loc_max, "default: length");
  comp->add_option("--amp-mean", comp_args.amp_mean)->capture_default_str();
  comp->add_option("--amp-sigma", comp_args.amp_sigma)->capture_default_str();
  comp->add_option("--count", comp_args.count)->capture_default_str();
  comp->add_option("--seed", comp_args.seed)->capture_default_str();
  add_output_options(*comp, comp_args.output);

  ReplayArgs replay_args;
  auto* replay = simulate->add_subcommand("replay", "rebuild the data recorded in a manifest");
  replay->add_option("manifest", replay_args.manifest)->required();
  add_output_options(*replay, replay_args.output);

  EvaluateArgs eval_args;
  auto* evaluate = app.add_subcommand("evaluate", "tune and score 1-NN classifiers, compare methods");
  evaluate->add_option("--train", eval_args.train, "training set (UCR format), repeatable");
  evaluate->add_option("--test", eval_args.test, "test set matching each --train");
  evaluate->add_option("--errors-table", eval_args.errors_table,
                       "compare methods from a table of per-dataset errors instead of classifying");
  evaluate->add_option("--wq-grid", eval_args.wq_grid, "w_q / n values to tune over")->delimiter(',');
  evaluate->add_option("--wh-grid", eval_args.wh_grid, "w_h / n values to tune over")->delimiter(',');
  evaluate->add_option("--critical-difference", eval_args.critical_difference)->capture_default_str();
  evaluate->add_option("--seed", eval_args.seed)->capture_default_str();
  evaluate->add_option("--jobs", eval_args.jobs, "worker threads")->check(CLI::PositiveNumber);
  add_method_options(*evaluate, eval_args.method, true);
  add_output_options(*evaluate, eval_args.output);

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "time each method against DTW");
  bench->add_option("dataset", bench_args.dataset, "UCR dataset to sample from; default: synthetic series");
  bench->add_option("--length", bench_args.length, "length of synthetic series")->capture_default_str();
  bench->add_option("--pairs", bench_args.pairs, "series sampled")->capture_default_str();
  bench->add_option("--repeats", bench_args.repeats)->capture_default_str();
  bench->add_option("--wq-ratio", bench_args.wq_ratio)->capture_default_str();
  bench->add_option("--wh-ratio", bench_args.wh_ratio)->capture_default_str();
  bench->add_option("--seed", bench_args.seed)->capture_default_str();
  add_method_options(*bench, bench_args.method, false);
  add_output_options(*bench, bench_args.output);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (align->parsed()) {
      cmd_align(align_args, out);
    } else if (global->parsed()) {
      cmd_simulate_global(global_args, out);
    } else if (comp->parsed()) {
      cmd_simulate_component(comp_args, out);
    } else if (replay->parsed()) {
      cmd_simulate_replay(replay_args, out);
    } else if (evaluate->parsed()) {
      cmd_evaluate(eval_args, out);
    } else if (bench->parsed()) {
      cmd_bench(bench_args, out);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace ardtw::cli
