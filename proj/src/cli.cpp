#include "macrostate/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "macrostate/error.hpp"
#include "macrostate/number_format.hpp"
#include "macrostate/risk_diagram.hpp"

namespace macrostate::cli {

namespace {

namespace fs = std::filesystem;

struct InputSet {
  std::vector<fs::path> files;
};

// Expands directories into their `<SYMBOL>.csv` members. Throws DataError
// naming the path when an input cannot be read.
InputSet resolve_inputs(const std::vector<fs::path>& inputs) {
  InputSet set;
  for (const auto& path : inputs) {
    std::error_code ec;
    if (fs::is_directory(path, ec)) {
      for (auto& file : list_universe(path)) {
        // Skip our own outputs (`X.rolling.csv`, ...) if they share the directory.
        if (file.stem().string().find('.') == std::string::npos) set.files.push_back(file);
      }
      continue;
    }
    if (!fs::is_regular_file(path, ec)) throw DataError("cannot read input " + path.string());
    std::ifstream probe(path);
    if (!probe) throw DataError("cannot read input " + path.string());
    set.files.push_back(path);
  }
  if (set.files.empty()) throw DataError("no input files found");
  return set;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << content;
  if (!out) throw DataError("failed writing " + path.string());
}

void ensure_dir(const fs::path& dir) {
  if (dir.empty()) throw DataError("no output directory given");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw DataError("cannot create output directory " + dir.string());
}

SymbolSeries load_clean(const fs::path& file, GapPolicy policy, std::ostream& err) {
  auto [series, report] = parse_series_file(file, policy);
  for (const auto& r : report.rejected) {
    err << "warning: " << file.string() << ":" << r.line << ": " << r.reason << "\n";
  }
  return clean_series(series, report);
}

int exit_status(std::size_t succeeded, std::size_t failed) {
  if (failed == 0) return kExitOk;
  return succeeded == 0 ? kExitFailure : kExitPartial;
}

TermMode mode_of(const RunConfig& config) {
  return config.absolute_mode ? TermMode::Absolute : TermMode::Signed;
}

}  // namespace

std::string reports_to_json(const std::vector<MacrostateReport>& reports) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json item;
    item["symbol"] = r.symbol;
    item["period_start"] = format_iso_date(r.period.start);
    item["period_end"] = format_iso_date(r.period.end);
    item["p_m"] = round_to_rendered(r.p_m);
    item["n_transitions"] = r.n_transitions;
    item["min_vol"] = round_to_rendered(r.min_vol);
    item["max_vol"] = round_to_rendered(r.max_vol);
    doc.push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

std::string rolling_to_csv(const std::vector<RollingPoint>& rolling) {
  std::string out = "date,p_m\n";
  for (const auto& p : rolling) out += format_iso_date(p.timestamp) + "," + format_number(p.p_m) + "\n";
  return out;
}

std::string peaks_to_csv(const std::vector<PeakRun>& peaks) {
  std::string out = "start,end,peak\n";
  for (const auto& p : peaks) {
    out += format_iso_date(p.start) + "," + format_iso_date(p.end) + "," + format_number(p.peak) + "\n";
  }
  return out;
}

int cmd_compute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  InputSet inputs;
  try {
    inputs = resolve_inputs(config.inputs);
    ensure_dir(config.out_dir);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  std::size_t ok = 0;
  std::size_t failed = 0;
  for (const auto& file : inputs.files) {
    try {
      const auto series = load_clean(file, config.gap_policy, err);
      const auto breakdown = period_macrostate(series, config.bucketing, mode_of(config));
      if (breakdown.omitted_buckets > 0) {
        err << "note: " << series.symbol << ": " << breakdown.omitted_buckets
            << " period(s) with fewer than 2 bars omitted\n";
      }
      const std::string json = reports_to_json(breakdown.reports);
      write_file(config.out_dir / (series.symbol + ".macrostate.json"), json);
      if (config.to_stdout) out << json;
      ++ok;
    } catch (const std::exception& e) {
      err << "error: " << file.string() << ": " << e.what() << "\n";
      ++failed;
    }
  }
  return exit_status(ok, failed);
}

int cmd_diagram(const RunConfig& config, int year, std::ostream& out, std::ostream& err) {
  InputSet inputs;
  try {
    inputs = resolve_inputs(config.inputs);
    ensure_dir(config.out_dir);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  const CalendarBucket wanted{Bucketing::Yearly, year, 0};
  std::vector<MacrostateReport> reports;
  std::size_t failed = 0;
  for (const auto& file : inputs.files) {
    try {
      const auto series = load_clean(file, config.gap_policy, err);
      const auto breakdown = period_macrostate(series, Bucketing::Yearly, mode_of(config));
      bool found = false;
      for (const auto& r : breakdown.reports) {
        if (r.bucket == wanted) {
          reports.push_back(r);
          found = true;
        }
      }
      if (!found) err << "excluded: " << series.symbol << " has no computable period " << year << "\n";
    } catch (const std::exception& e) {
      err << "error: " << file.string() << ": " << e.what() << "\n";
      ++failed;
    }
  }
  if (reports.empty()) {
    err << "error: no computable symbols for period " << year << "\n";
    return kExitFailure;
  }
  try {
    const auto diagram = build_diagram(reports);
    const std::string stem = "diagram_" + std::to_string(year);
    const std::string csv = emit_csv(diagram);
    write_file(config.out_dir / (stem + ".csv"), csv);
    if (config.formats.count(OutputFormat::Svg) != 0) {
      write_file(config.out_dir / (stem + ".svg"),
                 emit_svg(diagram, config.svg_width, config.svg_height));
    }
    if (config.to_stdout) out << csv;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return failed == 0 ? kExitOk : kExitPartial;
}

int cmd_series(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.window < 1 || config.step < 1 || !(config.peak_factor > 0.0)) {
    err << "error: window and step must be >= 1 and peak factor > 0\n";
    return kExitFailure;
  }
  InputSet inputs;
  try {
    inputs = resolve_inputs(config.inputs);
    ensure_dir(config.out_dir);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  std::size_t ok = 0;
  std::size_t failed = 0;
  for (const auto& file : inputs.files) {
    try {
      const auto series = load_clean(file, config.gap_policy, err);
      const auto rolling = rolling_macrostate(series, config.window, config.step, mode_of(config));
      const auto peaks = detect_peaks(rolling, config.peak_factor);
      const std::string rolling_csv = rolling_to_csv(rolling);
      write_file(config.out_dir / (series.symbol + ".rolling.csv"), rolling_csv);
      write_file(config.out_dir / (series.symbol + ".peaks.csv"), peaks_to_csv(peaks));
      if (config.to_stdout) out << rolling_csv;
      ++ok;
    } catch (const std::exception& e) {
      err << "error: " << file.string() << ": " << e.what() << "\n";
      ++failed;
    }
  }
  return exit_status(ok, failed);
}

int cmd_synth(const SynthConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.symbol.empty() || config.symbol.find_first_of("/\\.") != std::string::npos) {
      throw std::invalid_argument("symbol must be non-empty and free of '/', '\\' and '.'");
    }
    auto series = generate(config.spec, config.symbol);
    if (config.shock) series = inject_shock(series, *config.shock);
    ensure_dir(config.out_dir);
    const std::string csv = serialize_series(series);
    write_file(config.out_dir / (config.symbol + ".csv"), csv);
    if (config.to_stdout) out << csv;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Macrostate parameter (economic entropy) of traded assets"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Key-value config file; command-line flags take precedence");

  const std::map<std::string, GapPolicy> policies{
      {"skip", GapPolicy::Skip}, {"carry", GapPolicy::CarryForward}, {"fail", GapPolicy::Fail}};
  const std::map<std::string, Bucketing> bucketings{{"yearly", Bucketing::Yearly},
                                                    {"monthly", Bucketing::Monthly}};

  RunConfig config;
  std::vector<std::string> formats;
  int year = 0;
  SynthConfig synth;
  std::string synth_start = "2008-01-01";
  std::size_t shock_start = 0;
  std::size_t shock_days = 0;
  double shock_vmul = 1.0;
  double shock_jump = 0.0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--input", config.inputs, "CSV files or directories of <SYMBOL>.csv")
        ->required();
    cmd->add_option("--out", config.out_dir, "Output directory")->required();
    cmd->add_option("--gap-policy", config.gap_policy, "Zero-volume handling")
        ->transform(CLI::CheckedTransformer(policies, CLI::ignore_case));
    cmd->add_flag("--abs", config.absolute_mode, "Average |Vol_n| terms instead of signed terms");
    cmd->add_flag("--stdout", config.to_stdout, "Also write the primary output to stdout");
  };

  auto* compute = app.add_subcommand("compute", "Per-period macrostate reports per symbol");
  add_common(compute);
  compute->add_option("--bucket", config.bucketing, "Calendar bucketing")
      ->transform(CLI::CheckedTransformer(bucketings, CLI::ignore_case));
  compute->add_option("--format", formats, "Output formats")->delimiter(',');

  auto* diagram = app.add_subcommand("diagram", "Investment risk diagram for one year");
  add_common(diagram);
  diagram->add_option("--year", year, "Calendar year")->required();
  diagram->add_option("--format", formats, "Output formats (csv, svg)")->delimiter(',');
  diagram->add_option("--width", config.svg_width, "SVG width in px")->check(CLI::Range(kMinSvgWidth, 100000));
  diagram->add_option("--height", config.svg_height, "SVG height in px")->check(CLI::Range(kMinSvgHeight, 100000));

  auto* series = app.add_subcommand("series", "Rolling macrostate series and peak runs");
  add_common(series);
  series->add_option("--window", config.window, "Window length in transitions")
      ->required()
      ->check(CLI::PositiveNumber);
  series->add_option("--step", config.step, "Window advance in transitions")->check(CLI::PositiveNumber);
  series->add_option("--peak-factor", config.peak_factor, "Peak threshold as a multiple of the median |P_M|")
      ->required()
      ->check(CLI::PositiveNumber);

  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic geometric-Brownian fixture");
  synth_cmd->add_option("--seed", synth.spec.seed, "Generator seed")->required();
  synth_cmd->add_option("--days", synth.spec.n_days, "Number of trading days")->required();
  synth_cmd->add_option("--price0", synth.spec.initial_price, "Initial price")->required();
  synth_cmd->add_option("--drift", synth.spec.drift, "Drift per day")->required();
  synth_cmd->add_option("--vol", synth.spec.volatility, "Volatility per sqrt(day)")->required();
  synth_cmd->add_option("--vmed", synth.spec.volume_median, "Median volume")->required();
  synth_cmd->add_option("--vsig", synth.spec.volume_sigma, "Log-volume sigma")->required();
  synth_cmd->add_option("--start", synth_start, "First calendar date (YYYY-MM-DD)");
  synth_cmd->add_option("--symbol", synth.symbol, "Ticker, also the file stem");
  synth_cmd->add_option("--out", synth.out_dir, "Output directory")->required();
  auto* shock_start_opt = synth_cmd->add_option("--shock-start", shock_start, "0-based first shocked day");
  auto* shock_days_opt = synth_cmd->add_option("--shock-days", shock_days, "Shock duration in days");
  synth_cmd->add_option("--shock-vmul", shock_vmul, "Volume multiplier inside the shock");
  synth_cmd->add_option("--shock-jump", shock_jump, "Fractional price jump on the first shock day");
  shock_start_opt->needs(shock_days_opt);
  shock_days_opt->needs(shock_start_opt);
  synth_cmd->add_flag("--stdout", synth.to_stdout, "Also write the CSV to stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitFailure;
  }

  if (!formats.empty()) {
    config.formats.clear();
    for (const auto& f : formats) {
      if (f == "csv") config.formats.insert(OutputFormat::Csv);
      else if (f == "svg") config.formats.insert(OutputFormat::Svg);
      else if (f == "json") config.formats.insert(OutputFormat::Json);
      else {
        err << "error: unknown output format '" << f << "' (expected csv, svg, json)\n";
        return kExitFailure;
      }
    }
  }

  if (*compute) return cmd_compute(config, out, err);
  if (*diagram) return cmd_diagram(config, year, out, err);
  if (*series) return cmd_series(config, out, err);

  const auto start = parse_iso_date(synth_start);
  if (!start) {
    err << "error: invalid --start date '" << synth_start << "'\n";
    return kExitFailure;
  }
  synth.spec.start = *start;
  if (*shock_start_opt) synth.shock = ShockSpec{shock_start, shock_days, shock_vmul, shock_jump};
  return cmd_synth(synth, out, err);
}

}  // namespace macrostate::cli
