// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace glsreg {

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<PlotSeries> series;
};

/// Self-contained SVG line plot. The plotted data are embedded as JSON in a
/// <metadata> element. Points that are non-finite, or non-positive on a log
/// axis, are dropped.
std::string render_svg(const PlotSpec& plot);

}  // namespace glsreg
