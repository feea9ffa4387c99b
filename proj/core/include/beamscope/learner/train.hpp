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

#ifndef BEAMSCOPE_LEARNER_TRAIN_HPP
#define BEAMSCOPE_LEARNER_TRAIN_HPP

#include "beamscope/learner/data.hpp"
#include "beamscope/learner/mlp.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace beamscope::learn
{
    enum class Optimizer
    {
        Sgd,
        Adam
    };

    std::string_view to_string(Optimizer o) noexcept;
    std::optional<Optimizer> parse_optimizer(std::string_view s) noexcept;

    struct TrainConfig
    {
        std::size_t epochs = 200;
        std::size_t batch_size = 10;
        double train_fraction = 0.8;
        double learning_rate = 1e-3;
        Optimizer optimizer = Optimizer::Adam;
        std::uint64_t seed = 42;
        std::vector<std::size_t> hidden_widths{32, 16, 8, 4, 2};

        void validate() const; // throws InvalidHyperparameter
        bool operator==(const TrainConfig &) const = default;
    };

    /// Network bundled with the input and target normalization it was trained under.
    struct MlpModel
    {
        Scaler input_scaler;
        TargetScaler target_scaler;
        Mlp net;

        double predict(const Features &x) const;
        bool operator==(const MlpModel &) const = default;
    };

    struct TrainReport
    {
        TrainConfig config;
        std::vector<double> loss_curve; ///< per-epoch training MSE in normalized target units
        double train_mse = 0.0;         ///< raw units, after the final epoch
        double test_mse = 0.0;          ///< raw units
        double test_mse_normalized = 0.0;
        std::optional<double> test_r2; ///< absent when the test target is constant
        std::vector<std::size_t> train_indices;
        std::vector<std::size_t> test_indices;
        bool operator==(const TrainReport &) const = default;
    };

    struct TrainResult
    {
        MlpModel model;
        TrainReport report;
    };

    /// Mini-batch training of `init` on standardized data; the scalers see `train` only.
    /// Throws NonFiniteLoss on divergence.
    TrainResult train(const Mlp &init, const Samples &train, const Samples &test, const TrainConfig &config);

    /// split_dataset + mlp_init_live + train, all keyed by config.seed. Split indices are echoed in the report.
    TrainResult train_on_dataset(const Dataset &dataset, const TrainConfig &config);
}

#endif
