#include "macrostate/risk_diagram.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "macrostate/error.hpp"
#include "macrostate/number_format.hpp"

namespace macrostate {

namespace {

Period bucket_bounds(const CalendarBucket& bucket) {
  using namespace std::chrono;
  const year y{bucket.year};
  if (bucket.kind == Bucketing::Yearly) return {y / January / 1, y / December / 31};
  const month m{bucket.month};
  return {y / m / 1, Date{y / m / last}};
}

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string px(double v) { return format_fixed(v, 2); }

}  // namespace

std::string to_string(RiskBand band) {
  switch (band) {
    case RiskBand::Low: return "low";
    case RiskBand::Moderate: return "moderate";
    case RiskBand::Elevated: return "elevated";
    case RiskBand::High: return "high";
  }
  return "unknown";
}

RiskBand band_for_rank(std::size_t rank, std::size_t size) {
  if (rank < 1 || rank > size) throw std::invalid_argument("rank outside universe");
  const std::size_t from_top = size < 4 ? rank - 1 : (rank - 1) * 4 / size;
  return static_cast<RiskBand>(3 - static_cast<int>(from_top));
}

RiskDiagram build_diagram(std::span<const MacrostateReport> reports,
                          std::chrono::sys_seconds generated_at) {
  if (reports.empty()) throw std::invalid_argument("cannot build a diagram from no reports");

  const auto& reference = reports.front().bucket;
  std::string offenders;
  for (const auto& r : reports) {
    if (r.bucket != reference) offenders += (offenders.empty() ? "" : ", ") + r.symbol;
  }
  if (!offenders.empty()) throw DataError("reports span mixed periods: " + offenders);

  RiskDiagram diagram;
  diagram.generated_at = generated_at;
  if (reference) {
    diagram.period = bucket_bounds(*reference);
  } else {
    diagram.period = reports.front().period;
    for (const auto& r : reports) {
      diagram.period.start = std::min(diagram.period.start, r.period.start);
      diagram.period.end = std::max(diagram.period.end, r.period.end);
    }
  }

  diagram.entries.reserve(reports.size());
  for (const auto& r : reports) diagram.entries.push_back({r.symbol, r.p_m, 0, RiskBand::Low});
  std::sort(diagram.entries.begin(), diagram.entries.end(),
            [](const RiskEntry& a, const RiskEntry& b) {
              const double ma = std::fabs(a.p_m);
              const double mb = std::fabs(b.p_m);
              if (ma != mb) return ma > mb;
              return a.symbol < b.symbol;
            });
  const std::size_t n = diagram.entries.size();
  for (std::size_t i = 0; i < n; ++i) {
    diagram.entries[i].rank = i + 1;
    diagram.entries[i].band = band_for_rank(i + 1, n);
  }
  return diagram;
}

std::string emit_csv(const RiskDiagram& diagram) {
  std::string out = "rank,symbol,p_m,band\n";
  for (const auto& e : diagram.entries) {
    out += std::to_string(e.rank);
    out += ',';
    out += e.symbol;
    out += ',';
    out += format_fixed(e.p_m, 6);
    out += ',';
    out += to_string(e.band);
    out += '\n';
  }
  return out;
}

std::string emit_svg(const RiskDiagram& diagram, int width_px, int height_px) {
  if (width_px < kMinSvgWidth || height_px < kMinSvgHeight) {
    throw std::invalid_argument("SVG must be at least " + std::to_string(kMinSvgWidth) + "x" +
                                std::to_string(kMinSvgHeight) + " px, got " +
                                std::to_string(width_px) + "x" + std::to_string(height_px));
  }
  const double width = width_px;
  const double height = height_px;
  constexpr double kTop = 30.0;
  constexpr double kBottom = 10.0;
  constexpr double kRightPad = 10.0;
  const double label_col = std::max(80.0, std::floor(width * 0.3));
  const double bar_area = width - label_col - kRightPad;
  const std::size_t n = diagram.entries.size();
  const double row = (height - kTop - kBottom) / static_cast<double>(std::max<std::size_t>(n, 1));
  const double bar_h = row * 0.7;
  const double font = std::min(12.0, std::max(1.0, row * 0.8));

  double max_mag = 0.0;
  for (const auto& e : diagram.entries) max_mag = std::max(max_mag, std::fabs(e.p_m));

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width_px) +
         "\" height=\"" + std::to_string(height_px) + "\" viewBox=\"0 0 " +
         std::to_string(width_px) + " " + std::to_string(height_px) + "\">\n";
  svg += "<defs>\n"
         "<pattern id=\"hatch\" patternUnits=\"userSpaceOnUse\" width=\"6\" height=\"6\" "
         "patternTransform=\"rotate(45)\"><rect width=\"6\" height=\"6\" fill=\"#ffffff\"/>"
         "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#333333\" stroke-width=\"3\"/>"
         "</pattern>\n"
         "<style>\n"
         "text { font-family: sans-serif; fill: #222222; }\n"
         ".band-high { fill: #c0392b; }\n"
         ".band-elevated { fill: #e67e22; }\n"
         ".band-moderate { fill: #f1c40f; }\n"
         ".band-low { fill: #27ae60; }\n"
         ".negative { fill: url(#hatch); stroke-width: 1.5; }\n"
         ".negative.band-high { stroke: #c0392b; }\n"
         ".negative.band-elevated { stroke: #e67e22; }\n"
         ".negative.band-moderate { stroke: #f1c40f; }\n"
         ".negative.band-low { stroke: #27ae60; }\n"
         "</style>\n"
         "</defs>\n";
  svg += "<text class=\"title\" x=\"" + px(width / 2.0) + "\" y=\"20.00\" font-size=\"14\" "
         "text-anchor=\"middle\">Investment risk diagram " +
         format_iso_date(diagram.period.start) + " to " + format_iso_date(diagram.period.end) +
         "</text>\n";
  svg += "<line class=\"axis\" x1=\"" + px(label_col) + "\" y1=\"" + px(kTop) + "\" x2=\"" +
         px(label_col) + "\" y2=\"" + px(height - kBottom) + "\" stroke=\"#000000\"/>\n";

  for (std::size_t i = 0; i < n; ++i) {
    const auto& e = diagram.entries[i];
    const double mag = std::fabs(e.p_m);
    const long length = max_mag > 0.0 ? std::lround(mag / max_mag * bar_area) : 0;
    const double y = kTop + row * static_cast<double>(i) + (row - bar_h) / 2.0;
    std::string cls = "bar band-" + to_string(e.band);
    if (e.p_m < 0.0) cls += " negative";
    const std::string symbol = xml_escape(e.symbol);
    svg += "<g class=\"entry\" data-rank=\"" + std::to_string(e.rank) + "\">";
    svg += "<rect class=\"" + cls + "\" x=\"" + px(label_col) + "\" y=\"" + px(y) +
           "\" width=\"" + std::to_string(length) + "\" height=\"" + px(bar_h) + "\"/>";
    svg += "<text class=\"label\" x=\"" + px(label_col - 4.0) + "\" y=\"" +
           px(y + bar_h / 2.0 + font / 3.0) + "\" font-size=\"" + px(font) +
           "\" text-anchor=\"end\">" + symbol + " " + format_fixed(e.p_m, 6) + "</text>";
    svg += "</g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace macrostate
