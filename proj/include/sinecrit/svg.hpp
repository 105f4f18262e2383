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


#ifndef SINECRIT_SVG_HPP
#define SINECRIT_SVG_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace sinecrit::cli {

enum class SeriesKind {
  line,    ///< polyline through (x, y)
  bars,    ///< histogram: x holds n+1 bin edges, y holds n heights
  points,  ///< markers at (x, y)
};

struct Series {
  std::string label;
  SeriesKind kind = SeriesKind::line;
  std::vector<double> x;
  std::vector<double> y;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

/// Renders the chart as a self-contained SVG document; output depends only
/// on the chart and the digest. Throws InvalidArgument when there is
/// nothing to draw.
std::string render_svg(const Chart& chart, const std::string& digest);
void emit_svg(const Chart& chart, const std::filesystem::path& path, const std::string& digest);

/// Histogram of `values` on `bins` equal bins over [lo, hi], normalised to
/// a density; values outside the range are dropped.
Series histogram_series(const std::string& label, const std::vector<double>& values, double lo,
                        double hi, int bins);

}  // namespace sinecrit::cli

#endif  // SINECRIT_SVG_HPP
