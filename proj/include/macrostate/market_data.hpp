#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "macrostate/calendar.hpp"

namespace macrostate {

/// One daily observation: close price and traded volume.
struct Bar {
  Date timestamp;
  double price = 0.0;   // > 0
  double volume = 0.0;  // >= 0

  friend bool operator==(const Bar&, const Bar&) = default;
};

/// How zero-volume bars are resolved before activity ratios are taken.
enum class GapPolicy { Skip, CarryForward, Fail };

std::string to_string(GapPolicy policy);

struct SymbolSeries {
  std::string symbol;
  std::vector<Bar> bars;  // strictly increasing timestamps
  GapPolicy gap_policy = GapPolicy::Skip;

  friend bool operator==(const SymbolSeries&, const SymbolSeries&) = default;
};

struct RejectedRow {
  std::size_t line = 0;  // 1-based, header is line 1
  std::string reason;
};

struct IngestReport {
  std::size_t rows_read = 0;
  std::size_t rows_accepted = 0;
  std::vector<RejectedRow> rejected;
  std::size_t gaps_handled = 0;
};

/// Parses the `date,close,volume` CSV format. Bad rows are itemized in the
/// report; a bad header, a duplicate date, or zero accepted rows throw
/// DataError. Output bars are sorted by date.
std::pair<SymbolSeries, IngestReport> parse_series(std::istream& input, const std::string& symbol,
                                                   GapPolicy policy = GapPolicy::Skip);

std::pair<SymbolSeries, IngestReport> parse_series_file(const std::filesystem::path& path,
                                                        GapPolicy policy = GapPolicy::Skip);

/// Resolves zero-volume bars according to the series' gap policy.
/// Throws DataError (naming the date) under GapPolicy::Fail and
/// InsufficientObservations if fewer than two bars remain.
SymbolSeries clean_series(const SymbolSeries& series);

/// As above, adding the number of resolved zero-volume bars to
/// `report.gaps_handled`.
SymbolSeries clean_series(const SymbolSeries& series, IngestReport& report);

/// Renders the series in the ingest CSV format with LF endings.
std::string serialize_series(const SymbolSeries& series);

/// `<SYMBOL>.csv` files in `dir`, sorted by file name.
std::vector<std::filesystem::path> list_universe(const std::filesystem::path& dir);

}  // namespace macrostate
