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

#ifndef MUCB_PLOT_HPP_
#define MUCB_PLOT_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mucb {

struct PlotSeries {
  std::string name;
  std::vector<std::int64_t> rounds;
  std::vector<double> median;
  std::vector<double> lower;
  std::vector<double> upper;
};

// Standalone SVG: log-scaled round axis, one median line and shaded
// quantile band per series.
std::string render_regret_svg(std::span<const PlotSeries> series, std::int64_t horizon,
                              const std::string& title);

}  // namespace mucb

#endif  // MUCB_PLOT_HPP_
