#include "macrostate/market_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string_view>

#include "macrostate/error.hpp"
#include "macrostate/number_format.hpp"

namespace macrostate {

namespace {

constexpr std::string_view kHeader = "date,close,volume";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(pos)));
      break;
    }
    fields.push_back(trim(line.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return fields;
}

// Returns the bar or fills `reason`.
std::optional<Bar> parse_row(std::string_view line, std::string& reason) {
  const auto fields = split_fields(line);
  if (fields.size() != 3) {
    reason = "expected 3 fields, found " + std::to_string(fields.size());
    return std::nullopt;
  }
  const auto date = parse_iso_date(fields[0]);
  if (!date) {
    reason = "invalid date '" + std::string(fields[0]) + "'";
    return std::nullopt;
  }
  const auto price = parse_number(fields[1]);
  if (!price) {
    reason = "invalid price '" + std::string(fields[1]) + "'";
    return std::nullopt;
  }
  if (*price <= 0.0) {
    reason = "non-positive price";
    return std::nullopt;
  }
  const auto volume = parse_number(fields[2]);
  if (!volume) {
    reason = "invalid volume '" + std::string(fields[2]) + "'";
    return std::nullopt;
  }
  if (*volume < 0.0) {
    reason = "negative volume";
    return std::nullopt;
  }
  return Bar{*date, *price, *volume == 0.0 ? 0.0 : *volume};
}

}  // namespace

std::string to_string(GapPolicy policy) {
  switch (policy) {
    case GapPolicy::Skip:
      return "skip";
    case GapPolicy::CarryForward:
      return "carry";
    case GapPolicy::Fail:
      return "fail";
  }
  return "unknown";
}

std::pair<SymbolSeries, IngestReport> parse_series(std::istream& input, const std::string& symbol,
                                                   GapPolicy policy) {
  if (symbol.empty()) throw std::invalid_argument("symbol must be non-empty");
  SymbolSeries series{symbol, {}, policy};
  IngestReport report;

  std::string line;
  if (!std::getline(input, line)) throw DataError("missing header row");
  std::string_view header = trim(line);
  if (header.substr(0, 3) == "\xEF\xBB\xBF") header.remove_prefix(3);
  if (header != kHeader) {
    throw DataError("malformed header '" + std::string(header) + "', expected '" +
                    std::string(kHeader) + "'");
  }

  std::size_t line_no = 1;
  while (std::getline(input, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    ++report.rows_read;
    std::string reason;
    if (auto bar = parse_row(row, reason)) {
      series.bars.push_back(*bar);
      ++report.rows_accepted;
    } else {
      report.rejected.push_back({line_no, std::move(reason)});
    }
  }
  if (series.bars.empty()) throw DataError("no accepted rows");

  std::stable_sort(series.bars.begin(), series.bars.end(),
                   [](const Bar& a, const Bar& b) { return a.timestamp < b.timestamp; });
  const auto dup = std::adjacent_find(
      series.bars.begin(), series.bars.end(),
      [](const Bar& a, const Bar& b) { return a.timestamp == b.timestamp; });
  if (dup != series.bars.end()) {
    throw DataError("duplicate timestamp " + format_iso_date(dup->timestamp));
  }
  return {std::move(series), std::move(report)};
}

std::pair<SymbolSeries, IngestReport> parse_series_file(const std::filesystem::path& path,
                                                        GapPolicy policy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  try {
    return parse_series(in, path.stem().string(), policy);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

SymbolSeries clean_series(const SymbolSeries& series) {
  IngestReport scratch;
  return clean_series(series, scratch);
}

SymbolSeries clean_series(const SymbolSeries& series, IngestReport& report) {
  SymbolSeries out{series.symbol, {}, series.gap_policy};
  out.bars.reserve(series.bars.size());
  std::size_t handled = 0;
  std::optional<Date> first_zero;
  std::size_t positive = 0;

  for (const Bar& bar : series.bars) {
    if (bar.volume > 0.0) {
      ++positive;
      out.bars.push_back(bar);
      continue;
    }
    if (!first_zero) first_zero = bar.timestamp;
    ++handled;
    switch (series.gap_policy) {
      case GapPolicy::Skip:
      case GapPolicy::Fail:
        break;
      case GapPolicy::CarryForward:
        // A leading zero-volume bar has nothing to carry and is dropped.
        if (!out.bars.empty()) out.bars.push_back(Bar{bar.timestamp, bar.price, out.bars.back().volume});
        break;
    }
  }

  if (series.gap_policy == GapPolicy::Fail) {
    if (positive < 2) throw InsufficientObservations(series.symbol);
    if (first_zero) {
      throw DataError(series.symbol + ": zero volume on " + format_iso_date(*first_zero) +
                      " with gap policy 'fail'");
    }
  }
  if (out.bars.size() < 2) throw InsufficientObservations(series.symbol);
  report.gaps_handled += handled;
  return out;
}

std::string serialize_series(const SymbolSeries& series) {
  std::string out(kHeader);
  out += '\n';
  for (const Bar& bar : series.bars) {
    out += format_iso_date(bar.timestamp);
    out += ',';
    out += format_number(bar.price);
    out += ',';
    out += format_number(bar.volume);
    out += '\n';
  }
  return out;
}

std::vector<std::filesystem::path> list_universe(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace macrostate
