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

#ifndef BEAMSCOPE_LEARNER_DATA_HPP
#define BEAMSCOPE_LEARNER_DATA_HPP

#include "beamscope/dataset.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace beamscope::learn
{
    inline constexpr std::size_t feature_count = 3;

    /// (alpha_deg, beta_deg, distance_ft)
    using Features = std::array<double, feature_count>;

    struct Samples
    {
        std::vector<Features> x;
        std::vector<double> y;

        std::size_t size() const noexcept { return y.size(); }
        bool empty() const noexcept { return y.empty(); }
    };

    Samples to_samples(const Dataset &dataset);

    struct DatasetSplit
    {
        Dataset train;
        Dataset test;
        std::vector<std::size_t> train_indices;
        std::vector<std::size_t> test_indices;
    };

    /// Seeded shuffle, then the first round(train_fraction * n) records go to training.
    /// With two or more records both sides are kept non-empty.
    DatasetSplit split_dataset(const Dataset &dataset, double train_fraction, std::uint64_t seed);

    /// Per-feature z-score fitted on the training split only.
    struct Scaler
    {
        Features mean{};
        Features stddev{1.0, 1.0, 1.0};

        static Scaler fit(std::span<const Features> rows); // throws ZeroVariance on a constant feature
        Features apply(const Features &x) const noexcept;
        bool operator==(const Scaler &) const = default;
    };

    /// Affine target normalization; a constant target keeps unit scale.
    struct TargetScaler
    {
        double mean = 0.0;
        double stddev = 1.0;

        static TargetScaler fit(std::span<const double> y);
        double apply(double v) const noexcept { return (v - mean) / stddev; }
        double invert(double z) const noexcept { return z * stddev + mean; }
        bool operator==(const TargetScaler &) const = default;
    };
}

#endif
