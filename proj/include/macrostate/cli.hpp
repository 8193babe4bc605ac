#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "macrostate/indicator.hpp"
#include "macrostate/market_data.hpp"
#include "macrostate/synthetic.hpp"

namespace macrostate::cli {

enum class OutputFormat { Csv, Svg, Json };

struct RunConfig {
  std::vector<std::filesystem::path> inputs;
  GapPolicy gap_policy = GapPolicy::Skip;
  Bucketing bucketing = Bucketing::Yearly;
  std::size_t window = 0;
  std::size_t step = 1;
  double peak_factor = 0.0;
  bool absolute_mode = false;
  std::filesystem::path out_dir;
  std::set<OutputFormat> formats{OutputFormat::Csv, OutputFormat::Json};
  bool to_stdout = false;
  int svg_width = 800;
  int svg_height = 600;
};

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitPartial = 2;

/// Per-symbol `<symbol>.macrostate.json` reports.
int cmd_compute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// `diagram_<year>.csv` and optionally `diagram_<year>.svg`.
int cmd_diagram(const RunConfig& config, int year, std::ostream& out, std::ostream& err);

/// Per-symbol `<symbol>.rolling.csv` and `<symbol>.peaks.csv`.
int cmd_series(const RunConfig& config, std::ostream& out, std::ostream& err);

struct SynthConfig {
  GbmSpec spec;
  std::string symbol = "SYN";
  std::optional<ShockSpec> shock;
  std::filesystem::path out_dir;
  bool to_stdout = false;
};

/// Writes `<symbol>.csv` in the ingest format.
int cmd_synth(const SynthConfig& config, std::ostream& out, std::ostream& err);

/// Serializes per-bucket reports as the `.macrostate.json` document.
std::string reports_to_json(const std::vector<MacrostateReport>& reports);

/// Rolling series as `date,p_m` CSV.
std::string rolling_to_csv(const std::vector<RollingPoint>& rolling);

/// Peak runs as `start,end,peak` CSV.
std::string peaks_to_csv(const std::vector<PeakRun>& peaks);

/// Parses arguments (argv[0] is the program name) and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace macrostate::cli
