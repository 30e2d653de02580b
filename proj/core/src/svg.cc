// core/src/svg.cc

// Copyright 2026  The mgf authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "mgf/svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "mgf/errors.h"

namespace mgf {

namespace {

constexpr int kWidth = 800;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

// A "nice" tick step covering the range with about `n` intervals.
double nice_step(double span, int n) {
  if (span <= 0.0) return 1.0;
  const double raw = span / n;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  double step;
  if (frac < 1.5) step = 1.0;
  else if (frac < 3.0) step = 2.0;
  else if (frac < 7.0) step = 5.0;
  else step = 10.0;
  return step * mag;
}

}  // namespace

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<SvgSeries>& series) {
  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  bool any = false;
  for (const SvgSeries& s : series) {
    if (s.x.size() != s.y.size()) {
      throw DataError("svg series '" + s.label + "' has mismatched lengths");
    }
    for (size_t i = 0; i < s.x.size(); i++) {
      if (!any) {
        x_min = x_max = s.x[i];
        y_min = y_max = s.y[i];
        any = true;
      }
      x_min = std::min(x_min, s.x[i]);
      x_max = std::max(x_max, s.x[i]);
      y_min = std::min(y_min, s.y[i]);
      y_max = std::max(y_max, s.y[i]);
    }
  }
  if (x_max <= x_min) x_max = x_min + 1.0;
  if (y_max <= y_min) y_max = y_min + 1.0;
  // A little vertical headroom so lines do not sit on the frame.
  const double y_pad = 0.05 * (y_max - y_min);
  y_min -= y_pad;
  y_max += y_pad;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto px = [&](double x) {
    return kMarginLeft + (x - x_min) / (x_max - x_min) * plot_w;
  };
  auto py = [&](double y) {
    return kMarginTop + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h;
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(kWidth) + "\" height=\"" + std::to_string(kHeight) +
         "\" viewBox=\"0 0 " + std::to_string(kWidth) + " " +
         std::to_string(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + std::to_string(kWidth / 2) +
         "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" +
         escape(title) + "</text>\n";

  // Frame.
  svg += "<rect x=\"" + std::to_string(kMarginLeft) + "\" y=\"" +
         std::to_string(kMarginTop) + "\" width=\"" + fmt(plot_w) +
         "\" height=\"" + fmt(plot_h) +
         "\" fill=\"none\" stroke=\"#333\"/>\n";

  // Ticks and grid lines.
  const double xs = nice_step(x_max - x_min, 6);
  for (double t = std::ceil(x_min / xs) * xs; t <= x_max + 1e-9; t += xs) {
    const double x = px(t);
    svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(kMarginTop) +
           "\" x2=\"" + fmt(x) + "\" y2=\"" + fmt(kMarginTop + plot_h) +
           "\" stroke=\"#ddd\"/>\n";
    svg += "<text x=\"" + fmt(x) + "\" y=\"" +
           fmt(kMarginTop + plot_h + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           fmt(t) + "</text>\n";
  }
  const double ys = nice_step(y_max - y_min, 6);
  for (double t = std::ceil(y_min / ys) * ys; t <= y_max + 1e-9; t += ys) {
    const double y = py(t);
    svg += "<line x1=\"" + fmt(kMarginLeft) + "\" y1=\"" + fmt(y) +
           "\" x2=\"" + fmt(kMarginLeft + plot_w) + "\" y2=\"" + fmt(y) +
           "\" stroke=\"#ddd\"/>\n";
    svg += "<text x=\"" + fmt(kMarginLeft - 6) + "\" y=\"" + fmt(y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           fmt(t) + "</text>\n";
  }

  // Axis labels.
  svg += "<text x=\"" + std::to_string(kWidth / 2) + "\" y=\"" +
         std::to_string(kHeight - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">" +
         escape(x_label) + "</text>\n";
  svg += "<text x=\"18\" y=\"" + std::to_string(kHeight / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 18 " +
         std::to_string(kHeight / 2) + ")\">" +
         escape(y_label) + "</text>\n";

  // Series.
  for (size_t si = 0; si < series.size(); si++) {
    const SvgSeries& s = series[si];
    if (s.x.empty()) continue;
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(*kPalette))];
    std::string pts;
    for (size_t i = 0; i < s.x.size(); i++) {
      if (i) pts += " ";
      pts += fmt(px(s.x[i])) + "," + fmt(py(s.y[i]));
    }
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
  }

  // Legend, top-right inside the frame.
  double ly = kMarginTop + 14;
  for (size_t si = 0; si < series.size(); si++) {
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(*kPalette))];
    const double lx = kMarginLeft + plot_w - 150;
    svg += "<line x1=\"" + fmt(lx) + "\" y1=\"" + fmt(ly - 4) + "\" x2=\"" +
           fmt(lx + 24) + "\" y2=\"" + fmt(ly - 4) + "\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fmt(lx + 30) + "\" y=\"" + fmt(ly) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" +
           escape(series[si].label) + "</text>\n";
    ly += 16;
  }

  svg += "</svg>\n";

  std::ofstream os(path, std::ios::trunc);
  if (!os) throw DataError("cannot write svg: " + path);
  os << svg;
  if (!os) throw DataError("short write on svg: " + path);
}

}  // namespace mgf
