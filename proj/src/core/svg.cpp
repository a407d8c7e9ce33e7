// SPDX-License-Identifier: Apache-2.0
#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "interval.hpp"
#include "io.hpp"
#include "json.hpp"

namespace glsreg {
namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 450;
constexpr double kLeft = 80;
constexpr double kRight = 170;
constexpr double kTop = 40;
constexpr double kBottom = 60;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Axis {
  bool log = false;
  double lo = 0.0;
  double hi = 1.0;

  double map(double v) const { return log ? std::log10(v) : v; }
  double frac(double v) const { return hi > lo ? (map(v) - lo) / (hi - lo) : 0.5; }
  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      const double step = std::max(1.0, std::ceil((std::floor(hi) - std::ceil(lo)) / 6.0));
      for (double e = std::ceil(lo); e <= hi + 1e-9; e += step) out.push_back(std::pow(10.0, e));
      if (out.empty()) out = {std::pow(10.0, lo), std::pow(10.0, hi)};
    } else {
      for (int i = 0; i <= 5; ++i) out.push_back(lo + (hi - lo) * i / 5.0);
    }
    return out;
  }
};

bool usable(double v, bool log) { return std::isfinite(v) && (!log || v > 0.0); }

}  // namespace

std::string render_svg(const PlotSpec& plot) {
  Axis ax{plot.log_x, kInf, -kInf};
  Axis ay{plot.log_y, kInf, -kInf};
  for (const auto& s : plot.series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!usable(s.x[i], ax.log) || !usable(s.y[i], ay.log)) continue;
      ax.lo = std::min(ax.lo, ax.map(s.x[i]));
      ax.hi = std::max(ax.hi, ax.map(s.x[i]));
      ay.lo = std::min(ay.lo, ay.map(s.y[i]));
      ay.hi = std::max(ay.hi, ay.map(s.y[i]));
    }
  }
  if (ax.lo > ax.hi) ax.lo = 0.0, ax.hi = 1.0;
  if (ay.lo > ay.hi) ay.lo = 0.0, ay.hi = 1.0;
  if (ay.hi == ay.lo) ay.lo -= 0.5, ay.hi += 0.5;
  if (ax.hi == ax.lo) ax.lo -= 0.5, ax.hi += 0.5;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + ax.frac(v) * pw; };
  auto py = [&](double v) { return kTop + (1.0 - ay.frac(v)) * ph; };

  nlohmann::json data = nlohmann::json::array();
  for (const auto& s : plot.series) {
    nlohmann::json xs = nlohmann::json::array();
    nlohmann::json ys = nlohmann::json::array();
    for (double v : s.x) xs.push_back(format_double(v));
    for (double v : s.y) ys.push_back(format_double(v));
    data.push_back({{"name", s.name}, {"x", xs}, {"y", ys}});
  }

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<metadata>" << xml_escape(data.dump()) << "</metadata>\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
     << xml_escape(plot.title) << "</text>\n"
     << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : ax.ticks()) {
    const double x = px(t);
    os << "<line x1=\"" << coord(x) << "\" y1=\"" << kTop + ph << "\" x2=\"" << coord(x) << "\" y2=\""
       << kTop + ph + 5 << "\" stroke=\"black\"/><text x=\"" << coord(x) << "\" y=\"" << kTop + ph + 18
       << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
  }
  for (double t : ay.ticks()) {
    const double y = py(t);
    os << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << coord(y) << "\" x2=\"" << kLeft << "\" y2=\""
       << coord(y) << "\" stroke=\"black\"/><text x=\"" << kLeft - 8 << "\" y=\"" << coord(y + 4)
       << "\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
  }
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">"
     << xml_escape(plot.x_label) << (ax.log ? " (log)" : "") << "</text>\n"
     << "<text transform=\"translate(18 " << kTop + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
     << xml_escape(plot.y_label) << (ay.log ? " (log)" : "") << "</text>\n";

  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const auto& s = plot.series[k];
    const char* color = kColors[k % std::size(kColors)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!usable(s.x[i], ax.log) || !usable(s.y[i], ay.log)) continue;
      os << (first ? "" : " ") << coord(px(s.x[i])) << "," << coord(py(s.y[i]));
      first = false;
    }
    os << "\"/>\n";
    const double ly = kTop + 14 + 18.0 * static_cast<double>(k);
    os << "<line x1=\"" << kLeft + pw + 12 << "\" y1=\"" << coord(ly - 4) << "\" x2=\"" << kLeft + pw + 32
       << "\" y2=\"" << coord(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/><text x=\""
       << kLeft + pw + 38 << "\" y=\"" << coord(ly) << "\">" << xml_escape(s.name) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace glsreg
