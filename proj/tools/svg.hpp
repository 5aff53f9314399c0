// Copyright 2026 The rsekit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RSE_TOOLS_SVG_HPP
#define RSE_TOOLS_SVG_HPP

#include <string>
#include <vector>

namespace rse::cli {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct ChartLabels {
  std::string title;
  std::string x_label;
  std::string y_label;
};

/// Standalone line chart, one polyline per series. Output depends only on
/// the input, so identical data gives identical bytes.
std::string render_svg(const std::vector<Series>& series, const ChartLabels& labels);

/// Parses a numeric CSV with a header row. Column 0 is x.
std::vector<Series> series_from_csv(const std::string& text);

}  // namespace rse::cli

#endif  // RSE_TOOLS_SVG_HPP
