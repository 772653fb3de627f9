#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "monoqueue/graph.hpp"  // detail::split_ws lives with the text parsing helpers

namespace monoqueue {

struct PlotSpec {
  std::string x_field;
  std::string y_field;
  std::string group_field;
  bool log_log = false;
};

struct PlotError {
  std::string message;
};

namespace detail {

inline std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace detail

/// One polyline per group value; y is averaged over rows sharing (group, x).
/// Deterministic for fixed input: groups are emitted in sorted order and all
/// numbers go through one fixed format.
inline std::variant<std::string, PlotError> render_plot_svg(std::string_view csv,
                                                            const PlotSpec& spec) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t nl = csv.find('\n', pos);
    if (nl == std::string_view::npos) nl = csv.size();
    std::string_view line = csv.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    pos = nl + 1;
  }
  if (lines.empty()) return PlotError{"empty CSV"};
  const auto header = detail::split_csv(lines[0]);
  const auto find_field = [&](const std::string& name) -> std::ptrdiff_t {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<std::ptrdiff_t>(i);
    return -1;
  };
  const auto xi = find_field(spec.x_field);
  const auto yi = find_field(spec.y_field);
  const auto gi = find_field(spec.group_field);
  if (xi < 0) return PlotError{"missing field: " + spec.x_field};
  if (yi < 0) return PlotError{"missing field: " + spec.y_field};
  if (gi < 0) return PlotError{"missing field: " + spec.group_field};
  if (lines.size() == 1) return PlotError{"empty CSV: no data rows"};

  struct Acc {
    double sum = 0;
    std::uint64_t count = 0;
  };
  std::map<std::string, std::map<double, Acc>> groups;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto cells = detail::split_csv(lines[r]);
    if (cells.size() != header.size())
      return PlotError{"row " + std::to_string(r + 1) + " has the wrong column count"};
    double x = 0, y = 0;
    const auto parse_num = [](std::string_view cell, double& out) {
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
      return ec == std::errc() && ptr == cell.data() + cell.size();
    };
    if (!parse_num(cells[xi], x) || !parse_num(cells[yi], y)) {
      return PlotError{"non-numeric value in row " + std::to_string(r + 1)};
    }
    if (spec.log_log && (x <= 0 || y <= 0))
      return PlotError{"log-log plot requires positive values"};
    auto& acc = groups[std::string(cells[gi])][x];
    acc.sum += y;
    acc.count += 1;
  }

  struct Point {
    double x, y;
  };
  std::vector<std::pair<std::string, std::vector<Point>>> series;
  double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;
  bool first = true;
  for (const auto& [name, by_x] : groups) {
    std::vector<Point> pts;
    for (const auto& [x, acc] : by_x) {
      double px = x, py = acc.sum / static_cast<double>(acc.count);
      if (spec.log_log) {
        px = std::log10(px);
        py = std::log10(py);
      }
      pts.push_back({px, py});
      if (first) {
        x_lo = x_hi = px;
        y_lo = y_hi = py;
        first = false;
      } else {
        x_lo = std::min(x_lo, px);
        x_hi = std::max(x_hi, px);
        y_lo = std::min(y_lo, py);
        y_hi = std::max(y_hi, py);
      }
    }
    series.emplace_back(name, std::move(pts));
  }
  if (x_hi == x_lo) {
    x_lo -= 1;
    x_hi += 1;
  }
  if (y_hi == y_lo) {
    y_lo -= 1;
    y_hi += 1;
  }

  constexpr double kWidth = 860, kHeight = 540;
  constexpr double kLeft = 90, kRight = 180, kTop = 40, kBottom = 70;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto sx = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  const auto sy = [&](double y) { return kTop + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h; };
  const auto fmt = [](double v) { return detail::format_number(v); };
  const auto coord = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };

  static constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                             "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) +
         "\" height=\"" + fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) + " " +
         fmt(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<line x1=\"" + coord(kLeft) + "\" y1=\"" + coord(kTop + plot_h) + "\" x2=\"" +
         coord(kLeft + plot_w) + "\" y2=\"" + coord(kTop + plot_h) +
         "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + coord(kLeft) + "\" y1=\"" + coord(kTop) + "\" x2=\"" +
         coord(kLeft) + "\" y2=\"" + coord(kTop + plot_h) + "\" stroke=\"black\"/>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double fx = x_lo + (x_hi - x_lo) * tick / 4.0;
    const double fy = y_lo + (y_hi - y_lo) * tick / 4.0;
    const double tx = sx(fx), ty = sy(fy);
    const double label_x = spec.log_log ? std::pow(10.0, fx) : fx;
    const double label_y = spec.log_log ? std::pow(10.0, fy) : fy;
    svg += "<line x1=\"" + coord(tx) + "\" y1=\"" + coord(kTop + plot_h) + "\" x2=\"" +
           coord(tx) + "\" y2=\"" + coord(kTop + plot_h + 6) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + coord(tx) + "\" y=\"" + coord(kTop + plot_h + 22) +
           "\" font-size=\"12\" text-anchor=\"middle\">" + fmt(label_x) + "</text>\n";
    svg += "<line x1=\"" + coord(kLeft - 6) + "\" y1=\"" + coord(ty) + "\" x2=\"" +
           coord(kLeft) + "\" y2=\"" + coord(ty) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + coord(kLeft - 10) + "\" y=\"" + coord(ty + 4) +
           "\" font-size=\"12\" text-anchor=\"end\">" + fmt(label_y) + "</text>\n";
  }
  svg += "<text x=\"" + coord(kLeft + plot_w / 2) + "\" y=\"" + coord(kHeight - 20) +
         "\" font-size=\"14\" text-anchor=\"middle\">" + spec.x_field +
         (spec.log_log ? " (log)" : "") + "</text>\n";
  svg += "<text x=\"20\" y=\"" + coord(kTop + plot_h / 2) +
         "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 20 " +
         coord(kTop + plot_h / 2) + ")\">" + spec.y_field +
         (spec.log_log ? " (log)" : "") + "</text>\n";

  std::size_t color = 0;
  for (const auto& [name, pts] : series) {
    const char* stroke = kPalette[color % (sizeof kPalette / sizeof *kPalette)];
    std::string points;
    for (const Point& pt : pts) {
      if (!points.empty()) points += ' ';
      points += coord(sx(pt.x)) + "," + coord(sy(pt.y));
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(stroke) +
           "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
    for (const Point& pt : pts) {
      svg += "<circle cx=\"" + coord(sx(pt.x)) + "\" cy=\"" + coord(sy(pt.y)) +
             "\" r=\"3\" fill=\"" + stroke + "\"/>\n";
    }
    const double ly = kTop + 16 + 18 * static_cast<double>(color);
    svg += "<line x1=\"" + coord(kLeft + plot_w + 14) + "\" y1=\"" + coord(ly - 4) +
           "\" x2=\"" + coord(kLeft + plot_w + 38) + "\" y2=\"" + coord(ly - 4) +
           "\" stroke=\"" + stroke + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + coord(kLeft + plot_w + 44) + "\" y=\"" + coord(ly) +
           "\" font-size=\"12\">" + name + "</text>\n";
    ++color;
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace monoqueue
