// Copyright 2026 The mucb Authors.
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

#include "mucb/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

namespace mucb {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 200.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 60.0;

constexpr std::array<const char*, 6> kPalette = {"#d62728", "#1f77b4", "#2ca02c",
                                                 "#9467bd", "#ff7f0e", "#8c564b"};

std::string escape(const std::string& text) {
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

// 1, 2, 5 x 10^k step giving roughly five ticks.
double nice_step(double span) {
  const double raw = span / 5.0;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0}) {
    if (m * magnitude >= raw) return m * magnitude;
  }
  return 10.0 * magnitude;
}

}  // namespace

std::string render_regret_svg(std::span<const PlotSeries> series, std::int64_t horizon,
                              const std::string& title) {
  const double log_max = std::log10(static_cast<double>(std::max<std::int64_t>(horizon, 10)));
  double y_max = 0.0;
  for (const PlotSeries& s : series) {
    for (double v : s.upper) y_max = std::max(y_max, v);
    for (double v : s.median) y_max = std::max(y_max, v);
  }
  if (!(y_max > 0.0)) y_max = 1.0;
  const double y_step = nice_step(y_max);
  y_max = std::ceil(y_max / y_step) * y_step;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto x_of = [&](double round) {
    return kLeft + plot_w * std::log10(std::max(round, 1.0)) / log_max;
  };
  const auto y_of = [&](double value) {
    return kTop + plot_h * (1.0 - std::clamp(value, 0.0, y_max) / y_max);
  };

  fmt::memory_buffer svg;
  auto out = std::back_inserter(svg);
  fmt::format_to(out,
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
                 "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\" font-size=\"12\">\n",
                 kWidth, kHeight);
  fmt::format_to(out, "<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", kWidth, kHeight);
  fmt::format_to(out, "<text x=\"{:.1f}\" y=\"28\" font-size=\"16\" text-anchor=\"middle\">{}</text>\n",
                 kLeft + plot_w / 2.0, escape(title));

  // Axes and grid.
  fmt::format_to(out,
                 "<g stroke=\"#cccccc\" stroke-width=\"1\">\n");
  for (int decade = 0; decade <= static_cast<int>(std::floor(log_max)); ++decade) {
    const double x = x_of(std::pow(10.0, decade));
    fmt::format_to(out, "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\"/>\n",
                   x, kTop, kTop + plot_h);
  }
  for (double v = 0.0; v <= y_max + y_step / 2.0; v += y_step) {
    fmt::format_to(out, "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\"/>\n",
                   kLeft, y_of(v), kLeft + plot_w);
  }
  fmt::format_to(out, "</g>\n");
  fmt::format_to(out,
                 "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" "
                 "fill=\"none\" stroke=\"black\"/>\n",
                 kLeft, kTop, plot_w, plot_h);
  for (int decade = 0; decade <= static_cast<int>(std::floor(log_max)); ++decade) {
    fmt::format_to(out,
                   "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">10<tspan "
                   "dy=\"-6\" font-size=\"9\">{}</tspan></text>\n",
                   x_of(std::pow(10.0, decade)), kTop + plot_h + 20.0, decade);
  }
  for (double v = 0.0; v <= y_max + y_step / 2.0; v += y_step) {
    fmt::format_to(out, "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{:g}</text>\n",
                   kLeft - 6.0, y_of(v) + 4.0, v);
  }
  fmt::format_to(out,
                 "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">round t</text>\n",
                 kLeft + plot_w / 2.0, kHeight - 15.0);
  fmt::format_to(out,
                 "<text transform=\"translate(20 {:.2f}) rotate(-90)\" "
                 "text-anchor=\"middle\">regret</text>\n",
                 kTop + plot_h / 2.0);

  for (std::size_t k = 0; k < series.size(); ++k) {
    const PlotSeries& s = series[k];
    const char* color = kPalette[k % kPalette.size()];
    if (s.rounds.empty()) continue;

    fmt::format_to(out, "<polygon fill=\"{}\" fill-opacity=\"0.2\" stroke=\"none\" points=\"",
                   color);
    for (std::size_t i = 0; i < s.rounds.size(); ++i) {
      fmt::format_to(out, "{:.2f},{:.2f} ", x_of(static_cast<double>(s.rounds[i])),
                     y_of(s.upper[i]));
    }
    for (std::size_t i = s.rounds.size(); i-- > 0;) {
      fmt::format_to(out, "{:.2f},{:.2f} ", x_of(static_cast<double>(s.rounds[i])),
                     y_of(s.lower[i]));
    }
    fmt::format_to(out, "\"/>\n");

    fmt::format_to(out, "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"",
                   color);
    for (std::size_t i = 0; i < s.rounds.size(); ++i) {
      fmt::format_to(out, "{:.2f},{:.2f} ", x_of(static_cast<double>(s.rounds[i])),
                     y_of(s.median[i]));
    }
    fmt::format_to(out, "\"/>\n");

    const double ly = kTop + 20.0 + 22.0 * static_cast<double>(k);
    const double lx = kLeft + plot_w + 15.0;
    fmt::format_to(out,
                   "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"18\" height=\"10\" fill=\"{}\" "
                   "fill-opacity=\"0.35\" stroke=\"{}\"/>\n",
                   lx, ly - 9.0, color, color);
    fmt::format_to(out, "<text x=\"{:.2f}\" y=\"{:.2f}\">{}</text>\n", lx + 24.0, ly,
                   escape(s.name));
  }
  fmt::format_to(out, "</svg>\n");
  return fmt::to_string(svg);
}

}  // namespace mucb
