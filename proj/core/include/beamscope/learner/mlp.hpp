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

#ifndef BEAMSCOPE_LEARNER_MLP_HPP
#define BEAMSCOPE_LEARNER_MLP_HPP

#include "beamscope/learner/data.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace beamscope::learn
{
    enum class Activation
    {
        Tanh,
        Relu,
        Linear
    };

    std::string_view to_string(Activation a) noexcept;
    std::optional<Activation> parse_activation(std::string_view s) noexcept;

    /// Fully connected layer, weights stored row-major (out x in).
    struct DenseLayer
    {
        std::size_t in = 0;
        std::size_t out = 0;
        std::vector<double> weights;
        std::vector<double> biases;
        Activation activation = Activation::Linear;

        double &w(std::size_t row, std::size_t col) { return weights[row * in + col]; }
        double w(std::size_t row, std::size_t col) const { return weights[row * in + col]; }
        bool operator==(const DenseLayer &) const = default;
    };

    /// Feed-forward regressor with 3 inputs and one linear output.
    struct Mlp
    {
        std::vector<DenseLayer> layers;

        std::size_t parameter_count() const noexcept;
        /// Flat view over parameters: per layer, weights then biases.
        double &parameter(std::size_t index);
        void validate() const; // throws InvalidArchitecture
        bool operator==(const Mlp &) const = default;
    };

    /// Hidden layer 1 uses Tanh, further hidden layers ReLU, output is linear of width 1.
    /// Weights are Glorot-uniform from `seed`. ReLU biases start at `relu_bias_init`, all others at zero.
    Mlp mlp_new(const std::vector<std::size_t> &hidden_widths, std::uint64_t seed);

    inline constexpr double relu_bias_init = 0.1;

    /// True when some ReLU layer outputs all zeros on every row of `x`, so no gradient reaches
    /// the layers below it.
    bool has_silent_layer(const Mlp &mlp, std::span<const Features> x);

    /// mlp_new(hidden_widths, seed), redrawn from derived seeds while it has a silent layer on `x`.
    /// Gives up after `max_draws` draws and returns the last one.
    Mlp mlp_init_live(const std::vector<std::size_t> &hidden_widths, std::uint64_t seed, std::span<const Features> x,
                      std::size_t max_draws = 16);

    double forward(const Mlp &mlp, const Features &x);

    /// Same layout as Mlp parameters.
    struct Gradients
    {
        std::vector<std::vector<double>> weights;
        std::vector<std::vector<double>> biases;

        std::vector<double> flatten() const;
    };

    struct BatchResult
    {
        Gradients grads;
        double loss = 0.0; ///< mean squared error over the batch
    };

    /// Exact gradients of the batch MSE. The ReLU derivative at zero is taken as 0.
    BatchResult backward_batch(const Mlp &mlp, std::span<const Features> x, std::span<const double> y);

    /// Pre-activation signs of every ReLU unit for one input; used to detect kinks in
    /// finite-difference checks.
    std::vector<bool> relu_pattern(const Mlp &mlp, const Features &x);
}

#endif
