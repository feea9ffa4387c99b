// SPDX-License-Identifier: Apache-2.0
//
// beamscope: mmWave beam profiling simulator and link-quality predictor
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef BEAMSCOPE_PLOT_HPP
#define BEAMSCOPE_PLOT_HPP

// Static SVG renderings of profiling datasets. Output is a pure function of the input.

#include "beamscope/dataset.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace beamscope::plot
{
    /// Value grid: one column per alpha, one row per (beta, distance) spot.
    struct HeatmapLayout
    {
        std::vector<double> alphas;
        std::vector<std::pair<double, double>> spots; ///< (beta, distance), beta-major
        std::vector<std::optional<double>> cells;     ///< row-major [spot][alpha]
        double min_value = 0.0;
        double max_value = 0.0;
    };

    /// One curve per alpha: value against beta, averaged over distances unless one is selected.
    struct BetaProfile
    {
        double alpha_deg = 0.0;
        std::vector<double> betas;
        std::vector<double> values;
    };

    HeatmapLayout heatmap_layout(const Dataset &dataset);
    std::vector<BetaProfile> beta_profiles(const Dataset &dataset, const std::vector<double> &alphas,
                                           std::optional<double> distance_ft = std::nullopt);

    /// Default curve selection: lowest, middle and highest alpha.
    std::vector<double> default_profile_alphas(const Dataset &dataset);

    void write_heatmap_svg(std::ostream &os, const Dataset &dataset);
    void write_beta_profile_svg(std::ostream &os, const Dataset &dataset, const std::vector<double> &alphas,
                                std::optional<double> distance_ft = std::nullopt);
}

#endif
