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

#include "beamscope/learner/mlp.hpp"

#include "beamscope/errors.hpp"
#include "beamscope/rng.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace beamscope::learn
{
    namespace
    {
        double activate(Activation a, double z) noexcept
        {
            switch (a)
            {
            case Activation::Tanh:
                return std::tanh(z);
            case Activation::Relu:
                return z > 0.0 ? z : 0.0;
            case Activation::Linear:
                break;
            }
            return z;
        }

        // Derivative expressed through the pre-activation z and the output a.
        double activate_grad(Activation a, double z, double out) noexcept
        {
            switch (a)
            {
            case Activation::Tanh:
                return 1.0 - out * out;
            case Activation::Relu:
                return z > 0.0 ? 1.0 : 0.0;
            case Activation::Linear:
                break;
            }
            return 1.0;
        }

        void affine(const DenseLayer &layer, std::span<const double> in, std::vector<double> &z)
        {
            z.resize(layer.out);
            for (std::size_t r = 0; r < layer.out; ++r)
            {
                double acc = layer.biases[r];
                const double *row = layer.weights.data() + r * layer.in;
                for (std::size_t c = 0; c < layer.in; ++c)
                    acc += row[c] * in[c];
                z[r] = acc;
            }
        }
    }

    std::string_view to_string(Activation a) noexcept
    {
        switch (a)
        {
        case Activation::Tanh:
            return "tanh";
        case Activation::Relu:
            return "relu";
        case Activation::Linear:
            break;
        }
        return "linear";
    }

    std::optional<Activation> parse_activation(std::string_view s) noexcept
    {
        if (s == "tanh")
            return Activation::Tanh;
        if (s == "relu")
            return Activation::Relu;
        if (s == "linear")
            return Activation::Linear;
        return std::nullopt;
    }

    std::size_t Mlp::parameter_count() const noexcept
    {
        std::size_t n = 0;
        for (const auto &l : layers)
            n += l.weights.size() + l.biases.size();
        return n;
    }

    double &Mlp::parameter(std::size_t index)
    {
        for (auto &l : layers)
        {
            if (index < l.weights.size())
                return l.weights[index];
            index -= l.weights.size();
            if (index < l.biases.size())
                return l.biases[index];
            index -= l.biases.size();
        }
        throw ShapeMismatch("parameter index out of range");
    }

    void Mlp::validate() const
    {
        if (layers.empty())
            throw InvalidArchitecture("network has no layers");
        if (layers.front().in != feature_count)
            throw InvalidArchitecture("first layer must take " + std::to_string(feature_count) + " inputs");
        for (std::size_t i = 0; i < layers.size(); ++i)
        {
            const auto &l = layers[i];
            if (l.in == 0 || l.out == 0 || l.weights.size() != l.in * l.out || l.biases.size() != l.out)
                throw InvalidArchitecture("layer " + std::to_string(i) + " has inconsistent dimensions");
            if (i + 1 < layers.size() && layers[i + 1].in != l.out)
                throw InvalidArchitecture("layer " + std::to_string(i + 1) + " does not chain");
            for (double v : l.weights)
                if (!std::isfinite(v))
                    throw InvalidArchitecture("non-finite weight in layer " + std::to_string(i));
            for (double v : l.biases)
                if (!std::isfinite(v))
                    throw InvalidArchitecture("non-finite bias in layer " + std::to_string(i));
        }
        if (layers.back().out != 1 || layers.back().activation != Activation::Linear)
            throw InvalidArchitecture("output layer must be linear with width 1");
    }

    Mlp mlp_new(const std::vector<std::size_t> &hidden_widths, std::uint64_t seed)
    {
        if (hidden_widths.empty())
            throw InvalidArchitecture("at least one hidden layer is required");
        for (auto w : hidden_widths)
            if (w == 0)
                throw InvalidArchitecture("hidden widths must be at least 1");

        auto rng = make_stream(seed, {0x1917u});
        Mlp mlp;
        std::size_t in = feature_count;
        for (std::size_t i = 0; i <= hidden_widths.size(); ++i)
        {
            const bool output = i == hidden_widths.size();
            DenseLayer l;
            l.in = in;
            l.out = output ? 1 : hidden_widths[i];
            l.activation = output ? Activation::Linear : (i == 0 ? Activation::Tanh : Activation::Relu);
            const double limit = std::sqrt(6.0 / static_cast<double>(l.in + l.out));
            std::uniform_real_distribution<double> dist(-limit, limit);
            l.weights.resize(l.in * l.out);
            for (auto &w : l.weights)
                w = dist(rng);
            l.biases.assign(l.out, l.activation == Activation::Relu ? relu_bias_init : 0.0);
            mlp.layers.push_back(std::move(l));
            in = mlp.layers.back().out;
        }
        return mlp;
    }

    bool has_silent_layer(const Mlp &mlp, std::span<const Features> x)
    {
        std::vector<bool> alive(mlp.layers.size(), false);
        std::vector<double> a, z;
        for (const auto &row : x)
        {
            a.assign(row.begin(), row.end());
            for (std::size_t l = 0; l < mlp.layers.size(); ++l)
            {
                const auto &layer = mlp.layers[l];
                affine(layer, a, z);
                for (auto &v : z)
                {
                    v = activate(layer.activation, v);
                    if (layer.activation != Activation::Relu || v != 0.0)
                        alive[l] = true;
                }
                a.swap(z);
            }
        }
        return std::find(alive.begin(), alive.end(), false) != alive.end();
    }

    Mlp mlp_init_live(const std::vector<std::size_t> &hidden_widths, std::uint64_t seed, std::span<const Features> x,
                      std::size_t max_draws)
    {
        Mlp mlp = mlp_new(hidden_widths, seed);
        for (std::uint64_t draw = 1; draw < max_draws && has_silent_layer(mlp, x); ++draw)
            mlp = mlp_new(hidden_widths, substream_seed(seed, {0x11FEu, draw}));
        return mlp;
    }

    double forward(const Mlp &mlp, const Features &x)
    {
        std::vector<double> a(x.begin(), x.end());
        std::vector<double> z;
        for (const auto &layer : mlp.layers)
        {
            affine(layer, a, z);
            for (auto &v : z)
                v = activate(layer.activation, v);
            a.swap(z);
        }
        return a.at(0);
    }

    std::vector<double> Gradients::flatten() const
    {
        std::vector<double> out;
        for (std::size_t i = 0; i < weights.size(); ++i)
        {
            out.insert(out.end(), weights[i].begin(), weights[i].end());
            out.insert(out.end(), biases[i].begin(), biases[i].end());
        }
        return out;
    }

    BatchResult backward_batch(const Mlp &mlp, std::span<const Features> x, std::span<const double> y)
    {
        if (x.size() != y.size())
            throw ShapeMismatch("batch has " + std::to_string(x.size()) + " inputs but " + std::to_string(y.size()) +
                                " targets");
        if (x.empty())
            throw ShapeMismatch("empty batch");
        if (mlp.layers.empty() || mlp.layers.front().in != feature_count || mlp.layers.back().out != 1)
            throw ShapeMismatch("network does not map 3 features to one output");

        const std::size_t n_layers = mlp.layers.size();
        BatchResult res;
        res.grads.weights.resize(n_layers);
        res.grads.biases.resize(n_layers);
        for (std::size_t l = 0; l < n_layers; ++l)
        {
            res.grads.weights[l].assign(mlp.layers[l].weights.size(), 0.0);
            res.grads.biases[l].assign(mlp.layers[l].biases.size(), 0.0);
        }

        const double scale = 2.0 / static_cast<double>(x.size());
        std::vector<std::vector<double>> pre(n_layers), act(n_layers + 1);
        std::vector<double> delta, next_delta;
        double sse = 0.0;

        for (std::size_t s = 0; s < x.size(); ++s)
        {
            act[0].assign(x[s].begin(), x[s].end());
            for (std::size_t l = 0; l < n_layers; ++l)
            {
                const auto &layer = mlp.layers[l];
                affine(layer, act[l], pre[l]);
                act[l + 1].resize(layer.out);
                for (std::size_t r = 0; r < layer.out; ++r)
                    act[l + 1][r] = activate(layer.activation, pre[l][r]);
            }

            const double residual = act[n_layers][0] - y[s];
            sse += residual * residual;

            delta.assign(1, scale * residual);
            for (std::size_t l = n_layers; l-- > 0;)
            {
                const auto &layer = mlp.layers[l];
                for (std::size_t r = 0; r < layer.out; ++r)
                    delta[r] *= activate_grad(layer.activation, pre[l][r], act[l + 1][r]);

                auto &gw = res.grads.weights[l];
                auto &gb = res.grads.biases[l];
                for (std::size_t r = 0; r < layer.out; ++r)
                {
                    gb[r] += delta[r];
                    double *row = gw.data() + r * layer.in;
                    for (std::size_t c = 0; c < layer.in; ++c)
                        row[c] += delta[r] * act[l][c];
                }

                if (l == 0)
                    break;
                next_delta.assign(layer.in, 0.0);
                for (std::size_t r = 0; r < layer.out; ++r)
                {
                    const double *row = layer.weights.data() + r * layer.in;
                    for (std::size_t c = 0; c < layer.in; ++c)
                        next_delta[c] += row[c] * delta[r];
                }
                delta.swap(next_delta);
            }
        }
        res.loss = sse / static_cast<double>(x.size());
        return res;
    }

    std::vector<bool> relu_pattern(const Mlp &mlp, const Features &x)
    {
        std::vector<bool> pattern;
        std::vector<double> a(x.begin(), x.end());
        std::vector<double> z;
        for (const auto &layer : mlp.layers)
        {
            affine(layer, a, z);
            for (auto &v : z)
            {
                if (layer.activation == Activation::Relu)
                    pattern.push_back(v > 0.0);
                v = activate(layer.activation, v);
            }
            a.swap(z);
        }
        return pattern;
    }
}
