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

#include "beamscope/learner/train.hpp"

#include "beamscope/errors.hpp"
#include "beamscope/learner/metrics.hpp"
#include "beamscope/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace beamscope::learn
{
    namespace
    {
        constexpr double adam_beta1 = 0.9;
        constexpr double adam_beta2 = 0.999;
        constexpr double adam_eps = 1e-8;

        class OptimizerState
        {
        public:
            OptimizerState(const Mlp &mlp, const TrainConfig &cfg)
                : kind_(cfg.optimizer), lr_(cfg.learning_rate)
            {
                const std::size_t n = mlp.parameter_count();
                if (kind_ == Optimizer::Adam)
                {
                    m_.assign(n, 0.0);
                    v_.assign(n, 0.0);
                }
            }

            void step(Mlp &mlp, const Gradients &g)
            {
                ++t_;
                const double bc1 = 1.0 - std::pow(adam_beta1, static_cast<double>(t_));
                const double bc2 = 1.0 - std::pow(adam_beta2, static_cast<double>(t_));
                std::size_t k = 0;
                auto update = [&](double &p, double grad) {
                    if (kind_ == Optimizer::Sgd)
                        p -= lr_ * grad;
                    else
                    {
                        m_[k] = adam_beta1 * m_[k] + (1.0 - adam_beta1) * grad;
                        v_[k] = adam_beta2 * v_[k] + (1.0 - adam_beta2) * grad * grad;
                        const double mhat = m_[k] / bc1;
                        const double vhat = v_[k] / bc2;
                        p -= lr_ * mhat / (std::sqrt(vhat) + adam_eps);
                    }
                    ++k;
                };
                for (std::size_t l = 0; l < mlp.layers.size(); ++l)
                {
                    auto &layer = mlp.layers[l];
                    for (std::size_t i = 0; i < layer.weights.size(); ++i)
                        update(layer.weights[i], g.weights[l][i]);
                    for (std::size_t i = 0; i < layer.biases.size(); ++i)
                        update(layer.biases[i], g.biases[l][i]);
                }
            }

        private:
            Optimizer kind_;
            double lr_;
            std::uint64_t t_ = 0;
            std::vector<double> m_, v_;
        };

        std::vector<double> predict_all(const MlpModel &m, const Samples &s)
        {
            std::vector<double> out;
            out.reserve(s.size());
            for (const auto &x : s.x)
                out.push_back(m.predict(x));
            return out;
        }
    }

    std::string_view to_string(Optimizer o) noexcept { return o == Optimizer::Adam ? "adam" : "sgd"; }

    std::optional<Optimizer> parse_optimizer(std::string_view s) noexcept
    {
        if (s == "adam")
            return Optimizer::Adam;
        if (s == "sgd")
            return Optimizer::Sgd;
        return std::nullopt;
    }

    void TrainConfig::validate() const
    {
        if (epochs == 0)
            throw InvalidHyperparameter("epochs must be at least 1");
        if (batch_size == 0)
            throw InvalidHyperparameter("batch size must be at least 1");
        if (!(train_fraction > 0.0 && train_fraction < 1.0))
            throw InvalidHyperparameter("train fraction must lie in (0, 1)");
        if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate))
            throw InvalidHyperparameter("learning rate must be finite and non-negative");
        if (hidden_widths.empty())
            throw InvalidArchitecture("at least one hidden layer is required");
    }

    double MlpModel::predict(const Features &x) const
    {
        return target_scaler.invert(forward(net, input_scaler.apply(x)));
    }

    TrainResult train(const Mlp &init, const Samples &train_set, const Samples &test_set, const TrainConfig &config)
    {
        config.validate();
        init.validate();
        if (train_set.empty())
            throw EmptyDataset("training split is empty");
        if (test_set.empty())
            throw EmptyDataset("test split is empty");

        TrainResult res;
        res.report.config = config;
        MlpModel &model = res.model;
        model.net = init;
        model.input_scaler = Scaler::fit(train_set.x);
        model.target_scaler = TargetScaler::fit(train_set.y);

        const std::size_t n = train_set.size();
        std::vector<Features> xs(n);
        std::vector<double> ys(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            xs[i] = model.input_scaler.apply(train_set.x[i]);
            ys[i] = model.target_scaler.apply(train_set.y[i]);
        }

        OptimizerState opt(model.net, config);
        auto rng = make_stream(config.seed, {0x5AFF1Eu});
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::vector<Features> bx;
        std::vector<double> by;

        res.report.loss_curve.reserve(config.epochs);
        for (std::size_t epoch = 0; epoch < config.epochs; ++epoch)
        {
            std::shuffle(order.begin(), order.end(), rng);
            double weighted = 0.0;
            for (std::size_t start = 0; start < n; start += config.batch_size)
            {
                const std::size_t end = std::min(n, start + config.batch_size);
                bx.clear();
                by.clear();
                for (std::size_t k = start; k < end; ++k)
                {
                    bx.push_back(xs[order[k]]);
                    by.push_back(ys[order[k]]);
                }
                BatchResult br = backward_batch(model.net, bx, by);
                if (!std::isfinite(br.loss))
                    throw NonFiniteLoss("non-finite loss at epoch " + std::to_string(epoch + 1) + ", batch starting at " +
                                        std::to_string(start) + " (learning rate " +
                                        std::to_string(config.learning_rate) + ")");
                weighted += br.loss * static_cast<double>(end - start);
                opt.step(model.net, br.grads);
            }
            const double epoch_loss = weighted / static_cast<double>(n);
            res.report.loss_curve.push_back(epoch_loss);
        }

        for (const auto &l : model.net.layers)
            for (double w : l.weights)
                if (!std::isfinite(w))
                    throw NonFiniteLoss("training produced non-finite weights");

        const auto train_pred = predict_all(model, train_set);
        const auto test_pred = predict_all(model, test_set);
        res.report.train_mse = mse(train_pred, train_set.y);
        res.report.test_mse = mse(test_pred, test_set.y);
        res.report.test_mse_normalized =
            res.report.test_mse / (model.target_scaler.stddev * model.target_scaler.stddev);
        if (!std::isfinite(res.report.test_mse))
            throw NonFiniteLoss("non-finite test error after training");
        try
        {
            res.report.test_r2 = r2(test_pred, test_set.y);
        }
        catch (const ZeroVariance &)
        {
            res.report.test_r2.reset();
        }
        return res;
    }

    TrainResult train_on_dataset(const Dataset &dataset, const TrainConfig &config)
    {
        config.validate();
        DatasetSplit split = split_dataset(dataset, config.train_fraction, config.seed);
        const Samples train_set = to_samples(split.train);
        const Samples test_set = to_samples(split.test);
        if (train_set.empty())
            throw EmptyDataset("training split is empty");
        const Scaler scaler = Scaler::fit(train_set.x);
        std::vector<Features> standardized;
        standardized.reserve(train_set.size());
        for (const auto &x : train_set.x)
            standardized.push_back(scaler.apply(x));
        TrainResult res = train(mlp_init_live(config.hidden_widths, config.seed, standardized), train_set, test_set, config);
        res.report.train_indices = std::move(split.train_indices);
        res.report.test_indices = std::move(split.test_indices);
        return res;
    }
}
