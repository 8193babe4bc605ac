#pragma once

#include <chrono>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "macrostate/indicator.hpp"

namespace macrostate {

/// Ordered low < moderate < elevated < high.
enum class RiskBand { Low = 0, Moderate = 1, Elevated = 2, High = 3 };

std::string to_string(RiskBand band);

struct RiskEntry {
  std::string symbol;
  double p_m = 0.0;
  std::size_t rank = 0;  // 1-based
  RiskBand band = RiskBand::Low;
};

/// Investment risk diagram: one period's universe ranked by |p_m| descending.
struct RiskDiagram {
  Period period;
  std::vector<RiskEntry> entries;
  std::chrono::sys_seconds generated_at{};
};

/// Band for 1-based `rank` in a universe of `size` symbols. Quartiles of the
/// ranking from the top; universes smaller than four fill bands from high
/// downwards.
RiskBand band_for_rank(std::size_t rank, std::size_t size);

/// Ranks reports that share one calendar bucket. Ties in |p_m| are broken by
/// ascending symbol. Throws std::invalid_argument on empty input and
/// DataError listing the symbols whose bucket differs from the first report.
RiskDiagram build_diagram(std::span<const MacrostateReport> reports,
                          std::chrono::sys_seconds generated_at = {});

/// `rank,symbol,p_m,band` with p_m at 6 decimals.
std::string emit_csv(const RiskDiagram& diagram);

inline constexpr int kMinSvgWidth = 200;
inline constexpr int kMinSvgHeight = 150;

/// Standalone SVG horizontal bar chart, bars proportional to |p_m|.
std::string emit_svg(const RiskDiagram& diagram, int width_px, int height_px);

}  // namespace macrostate
