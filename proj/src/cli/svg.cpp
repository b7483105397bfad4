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


#include "pprlab/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "pprlab/error.hpp"

namespace pprlab::cli {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;
constexpr int kTicks = 5;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
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

}  // namespace

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void SvgPlot::add_line(std::string label, std::string colour, std::vector<double> x,
                       std::vector<double> y) {
  require(x.size() == y.size(), ErrorCode::InvalidArgument, "series x/y length mismatch");
  series_.push_back({std::move(label), std::move(colour), Style::Line, std::move(x), std::move(y)});
}

void SvgPlot::add_points(std::string label, std::string colour, std::vector<double> x,
                         std::vector<double> y) {
  require(x.size() == y.size(), ErrorCode::InvalidArgument, "series x/y length mismatch");
  series_.push_back(
      {std::move(label), std::move(colour), Style::Points, std::move(x), std::move(y)});
}

void SvgPlot::add_vline(double x, std::string label, std::string colour) {
  markers_.push_back({x, std::move(label), std::move(colour)});
}

void SvgPlot::set_x_range(double lo, double hi) {
  require(lo < hi, ErrorCode::InvalidArgument, "empty x range");
  x_range_ = {lo, hi};
}

void SvgPlot::set_y_range(double lo, double hi) {
  require(lo < hi, ErrorCode::InvalidArgument, "empty y range");
  y_range_ = {lo, hi};
}

std::pair<double, double> SvgPlot::x_range() const {
  if (x_range_) return *x_range_;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& s : series_) {
    for (double v : s.x) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  for (const auto& m : markers_) {
    lo = std::min(lo, m.x);
    hi = std::max(hi, m.x);
  }
  if (!std::isfinite(lo)) return {0.0, 1.0};
  if (!(lo < hi)) return {lo - 1.0, hi + 1.0};
  return {lo, hi};
}

std::pair<double, double> SvgPlot::y_range() const {
  if (y_range_) return *y_range_;
  double lo = 0.0;
  double hi = 0.0;
  for (const auto& s : series_) {
    for (double v : s.y) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  hi *= 1.05;
  if (!(lo < hi)) hi = lo + 1.0;
  return {lo, hi};
}

std::string SvgPlot::render() const {
  const auto [x0, x1] = x_range();
  const auto [y0, y1] = y_range();
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  auto sy = [&](double y) { return kTop + ph - (y - y0) / (y1 - y0) * ph; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt("%.0f", kWidth) +
         "\" height=\"" + fmt("%.0f", kHeight) + "\" viewBox=\"0 0 " + fmt("%.0f", kWidth) + " " +
         fmt("%.0f", kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + fmt("%.1f", kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" +
         escape(title_) + "</text>\n";

  // Axes, ticks and grid.
  out += "<g stroke=\"black\" stroke-width=\"1\">\n";
  out += "<line x1=\"" + fmt("%.2f", kLeft) + "\" y1=\"" + fmt("%.2f", kTop + ph) + "\" x2=\"" +
         fmt("%.2f", kLeft + pw) + "\" y2=\"" + fmt("%.2f", kTop + ph) + "\"/>\n";
  out += "<line x1=\"" + fmt("%.2f", kLeft) + "\" y1=\"" + fmt("%.2f", kTop) + "\" x2=\"" +
         fmt("%.2f", kLeft) + "\" y2=\"" + fmt("%.2f", kTop + ph) + "\"/>\n";
  out += "</g>\n<g>\n";
  for (int i = 0; i <= kTicks; ++i) {
    const double xv = x0 + (x1 - x0) * i / kTicks;
    const double yv = y0 + (y1 - y0) * i / kTicks;
    out += "<line x1=\"" + fmt("%.2f", sx(xv)) + "\" y1=\"" + fmt("%.2f", kTop + ph) + "\" x2=\"" +
           fmt("%.2f", sx(xv)) + "\" y2=\"" + fmt("%.2f", kTop + ph + 5) +
           "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + fmt("%.2f", sx(xv)) + "\" y=\"" + fmt("%.2f", kTop + ph + 18) +
           "\" text-anchor=\"middle\">" + fmt("%.4g", xv) + "</text>\n";
    out += "<line x1=\"" + fmt("%.2f", kLeft - 5) + "\" y1=\"" + fmt("%.2f", sy(yv)) + "\" x2=\"" +
           fmt("%.2f", kLeft + pw) + "\" y2=\"" + fmt("%.2f", sy(yv)) +
           "\" stroke=\"#dddddd\"/>\n";
    out += "<text x=\"" + fmt("%.2f", kLeft - 8) + "\" y=\"" + fmt("%.2f", sy(yv) + 4) +
           "\" text-anchor=\"end\">" + fmt("%.4g", yv) + "</text>\n";
  }
  out += "</g>\n";
  out += "<text x=\"" + fmt("%.1f", kLeft + pw / 2) + "\" y=\"" + fmt("%.1f", kHeight - 12) +
         "\" text-anchor=\"middle\">" + escape(x_label_) + "</text>\n";
  out += "<text transform=\"translate(16 " + fmt("%.1f", kTop + ph / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">" + escape(y_label_) + "</text>\n";

  for (const auto& s : series_) {
    if (s.style == Style::Line) {
      out += "<polyline fill=\"none\" stroke=\"" + escape(s.colour) +
             "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (i) out += ' ';
        out += fmt("%.2f", sx(s.x[i])) + "," + fmt("%.2f", sy(s.y[i]));
      }
      out += "\"/>\n";
    } else {
      out += "<g fill=\"" + escape(s.colour) + "\">\n";
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        out += "<circle cx=\"" + fmt("%.2f", sx(s.x[i])) + "\" cy=\"" + fmt("%.2f", sy(s.y[i])) +
               "\" r=\"1.2\"/>\n";
      }
      out += "</g>\n";
    }
  }

  for (const auto& m : markers_) {
    out += "<line x1=\"" + fmt("%.2f", sx(m.x)) + "\" y1=\"" + fmt("%.2f", kTop) + "\" x2=\"" +
           fmt("%.2f", sx(m.x)) + "\" y2=\"" + fmt("%.2f", kTop + ph) + "\" stroke=\"" +
           escape(m.colour) + "\" stroke-dasharray=\"5,4\"/>\n";
    out += "<text x=\"" + fmt("%.2f", sx(m.x) + 4) + "\" y=\"" + fmt("%.2f", kTop + 12) +
           "\" fill=\"" + escape(m.colour) + "\">" + escape(m.label) + "</text>\n";
  }

  // Legend, top right.
  double ly = kTop + 10;
  for (const auto& s : series_) {
    const double lx = kLeft + pw - 170;
    out += "<rect x=\"" + fmt("%.1f", lx) + "\" y=\"" + fmt("%.1f", ly - 8) +
           "\" width=\"12\" height=\"8\" fill=\"" + escape(s.colour) + "\"/>\n";
    out += "<text x=\"" + fmt("%.1f", lx + 18) + "\" y=\"" + fmt("%.1f", ly) + "\">" +
           escape(s.label) + "</text>\n";
    ly += 16;
  }
  out += "</svg>\n";
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::IoError, "write to " + path.string() + " failed");
}

}  // namespace pprlab::cli
