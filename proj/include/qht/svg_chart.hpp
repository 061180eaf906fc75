// Copyright 2026 The qht Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Minimal SVG line chart of a Table: column 0 is x, every other column
// except the optimizer flag is a series.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "qht/figures.hpp"

namespace qht::figures {

namespace detail {

inline std::string fmt(const char* pattern, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, x);
  return buf;
}

inline bool is_series(const std::string& name) { return name != "optimizer_converged"; }

}  // namespace detail

inline void write_svg(std::ostream& out, const Table& t, const std::string& title) {
  constexpr double kWidth = 720, kHeight = 480;
  constexpr double kLeft = 70, kRight = 220, kTop = 40, kBottom = 60;
  constexpr std::array<const char*, 8> kColors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& row : t.rows) {
    xmin = std::min(xmin, row[0]);
    xmax = std::max(xmax, row[0]);
    for (std::size_t c = 1; c < row.size(); ++c) {
      if (!detail::is_series(t.header[c]) || !std::isfinite(row[c])) continue;
      ymin = std::min(ymin, row[c]);
      ymax = std::max(ymax, row[c]);
    }
  }
  if (!(xmax > xmin)) {
    xmin = std::isfinite(xmin) ? xmin - 0.5 : 0.0;
    xmax = xmin + 1.0;
  }
  if (!(ymax > ymin)) {
    ymin = std::isfinite(ymin) ? ymin - 0.5 : 0.0;
    ymax = ymin + 1.0;
  }
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * ph; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kLeft << "\" y=\"24\" font-size=\"15\">" << title << "</text>\n";
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\""
      << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 5.0;
    const double yv = ymin + (ymax - ymin) * i / 5.0;
    out << "<text x=\"" << detail::fmt("%.2f", px(xv)) << "\" y=\"" << kTop + ph + 18
        << "\" text-anchor=\"middle\">" << detail::fmt("%.3g", xv) << "</text>\n";
    out << "<text x=\"" << kLeft - 6 << "\" y=\"" << detail::fmt("%.2f", py(yv) + 4)
        << "\" text-anchor=\"end\">" << detail::fmt("%.3g", yv) << "</text>\n";
  }
  out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 16
      << "\" text-anchor=\"middle\">" << t.header[0] << "</text>\n";

  int series = 0;
  for (std::size_t c = 1; c < t.header.size(); ++c) {
    if (!detail::is_series(t.header[c])) continue;
    const char* color = kColors[static_cast<std::size_t>(series) % kColors.size()];
    std::string path;
    bool pen_down = false;
    for (const auto& row : t.rows) {
      if (!std::isfinite(row[c])) {
        pen_down = false;
        continue;
      }
      path += pen_down ? " L" : " M";
      path += detail::fmt("%.2f", px(row[0])) + "," + detail::fmt("%.2f", py(row[c]));
      pen_down = true;
    }
    out << "<path d=\"" << path << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\"/>\n";
    const double ly = kTop + 14 + 18 * series;
    out << "<line x1=\"" << kLeft + pw + 12 << "\" y1=\"" << ly << "\" x2=\""
        << kLeft + pw + 36 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kLeft + pw + 42 << "\" y=\"" << ly + 4 << "\">" << t.header[c]
        << "</text>\n";
    ++series;
  }
  out << "</svg>\n";
}

}  // namespace qht::figures
