// Copyright 2026 The pprlab Authors.
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


#ifndef PPRLAB_CLI_SVG_HPP_
#define PPRLAB_CLI_SVG_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pprlab::cli {

/// A minimal self-contained SVG line/scatter plot. Output depends only on
/// the data (fixed-precision formatting), so re-rendering is byte-stable.
class SvgPlot {
 public:
  enum class Style { Line, Points };

  struct Series {
    std::string label;
    std::string colour;
    Style style = Style::Line;
    std::vector<double> x;
    std::vector<double> y;
  };

  struct Marker {
    double x = 0.0;
    std::string label;
    std::string colour;
  };

  SvgPlot(std::string title, std::string x_label, std::string y_label);

  void add_line(std::string label, std::string colour, std::vector<double> x,
                std::vector<double> y);
  void add_points(std::string label, std::string colour, std::vector<double> x,
                  std::vector<double> y);
  /// Vertical dashed marker across the plot area.
  void add_vline(double x, std::string label, std::string colour);

  void set_x_range(double lo, double hi);
  void set_y_range(double lo, double hi);

  /// Explicit range if set, else data range (y from min(0, ymin) to
  /// ymax * 1.05).
  std::pair<double, double> x_range() const;
  std::pair<double, double> y_range() const;

  const std::vector<Series>& series() const { return series_; }
  const std::vector<Marker>& markers() const { return markers_; }

  std::string render() const;

 private:
  std::string title_;
  std::string x_label_;
  std::string y_label_;
  std::vector<Series> series_;
  std::vector<Marker> markers_;
  std::optional<std::pair<double, double>> x_range_;
  std::optional<std::pair<double, double>> y_range_;
};

/// Writes `content` to `path`, creating parent directories. Throws IoError.
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace pprlab::cli

#endif  // PPRLAB_CLI_SVG_HPP_
