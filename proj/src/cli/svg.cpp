// Copyright 2026 The sinecrit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "sinecrit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "sinecrit/error.hpp"

namespace sinecrit::cli {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;
constexpr const char* kPalette[] = {"#c0392b", "#27ae60", "#2c6fbb", "#8e44ad", "#d68910", "#555555"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void widen() {
    if (!(hi > lo)) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

double nice_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * mag >= raw) return m * mag;
  return 10.0 * mag;
}

}  // namespace

Series histogram_series(const std::string& label, const std::vector<double>& values, double lo,
                        double hi, int bins) {
  if (bins <= 0 || !(hi > lo)) throw InvalidArgument("histogram: need bins > 0 and hi > lo");
  Series s;
  s.label = label;
  s.kind = SeriesKind::bars;
  const double width = (hi - lo) / bins;
  for (int i = 0; i <= bins; ++i) s.x.push_back(lo + width * i);
  std::vector<double> count(static_cast<std::size_t>(bins), 0.0);
  for (double v : values) {
    if (!(v >= lo && v < hi)) continue;
    const auto b = std::min(static_cast<std::size_t>((v - lo) / width), count.size() - 1);
    count[b] += 1.0;
  }
  const double total = static_cast<double>(values.size());
  for (double c : count) s.y.push_back(total > 0.0 ? c / (total * width) : 0.0);
  return s;
}

std::string render_svg(const Chart& chart, const std::string& digest) {
  Range xr, yr;
  bool any = false;
  for (const auto& s : chart.series) {
    const bool bars = s.kind == SeriesKind::bars;
    if (bars ? s.x.size() != s.y.size() + 1 : s.x.size() != s.y.size())
      throw InvalidArgument("svg: series '" + s.label + "' has mismatched x and y");
    if (s.y.empty()) continue;
    any = true;
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
    if (bars) yr.add(0.0);
  }
  if (!any) throw InvalidArgument("svg: no data to draw");
  xr.widen();
  yr.widen();
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return kTop + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o << "<!-- manifest " << digest << " -->\n";
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
    << escape(chart.title) << "</text>\n";
  o << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw)
    << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int axis = 0; axis < 2; ++axis) {
    const Range& r = axis == 0 ? xr : yr;
    const double step = nice_step(r.hi - r.lo);
    for (double v = std::ceil(r.lo / step) * step; v <= r.hi + 1e-9 * step; v += step) {
      const double vv = std::abs(v) < 1e-12 * step ? 0.0 : v;
      if (axis == 0) {
        o << "<line x1=\"" << num(px(vv)) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(px(vv))
          << "\" y2=\"" << num(kTop + ph + 5) << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << num(px(vv)) << "\" y=\"" << num(kTop + ph + 18)
          << "\" text-anchor=\"middle\">" << tick(vv) << "</text>\n";
      } else {
        o << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(py(vv)) << "\" x2=\"" << num(kLeft)
          << "\" y2=\"" << num(py(vv)) << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py(vv) + 4)
          << "\" text-anchor=\"end\">" << tick(vv) << "</text>\n";
      }
    }
  }
  o << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 12)
    << "\" text-anchor=\"middle\">" << escape(chart.x_label) << "</text>\n";
  o << "<text transform=\"translate(18," << num(kTop + ph / 2)
    << ") rotate(-90)\" text-anchor=\"middle\">" << escape(chart.y_label) << "</text>\n";

  for (std::size_t i = 0; i < chart.series.size(); ++i) {
    const auto& s = chart.series[i];
    const char* color = kPalette[i % std::size(kPalette)];
    if (s.y.empty()) continue;
    if (s.kind == SeriesKind::bars) {
      o << "<path fill=\"" << color << "\" fill-opacity=\"0.35\" stroke=\"" << color << "\" d=\"M"
        << num(px(s.x.front())) << ' ' << num(py(0.0));
      for (std::size_t b = 0; b < s.y.size(); ++b)
        o << " L" << num(px(s.x[b])) << ' ' << num(py(s.y[b])) << " L" << num(px(s.x[b + 1])) << ' '
          << num(py(s.y[b]));
      o << " L" << num(px(s.x.back())) << ' ' << num(py(0.0)) << " Z\"/>\n";
    } else if (s.kind == SeriesKind::line) {
      o << "<polyline fill=\"none\" stroke-width=\"2\" stroke=\"" << color << "\" points=\"";
      for (std::size_t k = 0; k < s.x.size(); ++k)
        o << (k ? " " : "") << num(px(s.x[k])) << ',' << num(py(s.y[k]));
      o << "\"/>\n";
    } else {
      for (std::size_t k = 0; k < s.x.size(); ++k)
        o << "<circle cx=\"" << num(px(s.x[k])) << "\" cy=\"" << num(py(s.y[k]))
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    const double ly = kTop + 14.0 + 18.0 * static_cast<double>(i);
    const double lx = kLeft + pw + 12.0;
    o << "<rect x=\"" << num(lx) << "\" y=\"" << num(ly - 9) << "\" width=\"12\" height=\"12\" fill=\""
      << color << "\"/>\n";
    o << "<text x=\"" << num(lx + 18) << "\" y=\"" << num(ly + 1) << "\">" << escape(s.label)
      << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void emit_svg(const Chart& chart, const std::filesystem::path& path, const std::string& digest) {
  const std::string doc = render_svg(chart, digest);
  std::ofstream out(path, std::ios::binary);
  out << doc;
  if (!out) throw InputError("svg: cannot write " + path.string());
}

}  // namespace sinecrit::cli
