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

#include "beamscope/learner/baselines.hpp"

#include "beamscope/errors.hpp"
#include "beamscope/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace beamscope::learn
{
    namespace
    {
        using Mat3 = std::array<std::array<double, 3>, 3>;

        // Gaussian elimination with partial pivoting; false when a pivot vanishes relative to `scale`.
        bool solve3(Mat3 a, Features b, double scale, Features &out)
        {
            for (std::size_t col = 0; col < 3; ++col)
            {
                std::size_t piv = col;
                for (std::size_t r = col + 1; r < 3; ++r)
                    if (std::abs(a[r][col]) > std::abs(a[piv][col]))
                        piv = r;
                if (!(std::abs(a[piv][col]) > 1e-12 * scale))
                    return false;
                std::swap(a[piv], a[col]);
                std::swap(b[piv], b[col]);
                for (std::size_t r = col + 1; r < 3; ++r)
                {
                    const double f = a[r][col] / a[col][col];
                    for (std::size_t c = col; c < 3; ++c)
                        a[r][c] -= f * a[col][c];
                    b[r] -= f * b[col];
                }
            }
            for (std::size_t i = 3; i-- > 0;)
            {
                double acc = b[i];
                for (std::size_t c = i + 1; c < 3; ++c)
                    acc -= a[i][c] * out[c];
                out[i] = acc / a[i][i];
            }
            return true;
        }

        void check_train(const Samples &train)
        {
            if (train.empty())
                throw EmptyDataset("training set is empty");
            if (train.x.size() != train.y.size())
                throw ShapeMismatch("feature and target counts differ");
        }

        class TreeBuilder
        {
        public:
            TreeBuilder(const Samples &s, std::size_t max_depth, std::size_t min_leaf)
                : s_(s), max_depth_(max_depth), min_leaf_(min_leaf) {}

            RegressionTree build(std::vector<std::size_t> idx)
            {
                RegressionTree t;
                grow(t, idx, 0);
                return t;
            }

        private:
            int grow(RegressionTree &t, std::vector<std::size_t> &idx, std::size_t depth)
            {
                const int node_id = static_cast<int>(t.nodes.size());
                t.nodes.push_back({});

                const double n = static_cast<double>(idx.size());
                double mean = 0.0;
                for (auto i : idx)
                    mean += s_.y[i];
                mean /= n;
                t.nodes[node_id].value = mean;

                double sse = 0.0;
                for (auto i : idx)
                    sse += (s_.y[i] - mean) * (s_.y[i] - mean);

                if (depth >= max_depth_ || idx.size() < 2 * min_leaf_ || !(sse > 0.0))
                    return node_id;

                int best_feature = -1;
                double best_gain = 1e-12 * sse;
                double best_threshold = 0.0;
                std::vector<std::size_t> sorted = idx;
                for (std::size_t f = 0; f < feature_count; ++f)
                {
                    std::stable_sort(sorted.begin(), sorted.end(),
                                     [&](std::size_t a, std::size_t b) { return s_.x[a][f] < s_.x[b][f]; });
                    // Centred sums: gain = SL^2/nL + SR^2/nR with the node total equal to zero.
                    double left = 0.0;
                    for (std::size_t k = 1; k < sorted.size(); ++k)
                    {
                        left += s_.y[sorted[k - 1]] - mean;
                        const double xl = s_.x[sorted[k - 1]][f];
                        const double xr = s_.x[sorted[k]][f];
                        if (k < min_leaf_ || sorted.size() - k < min_leaf_ || !(xl < xr))
                            continue;
                        const double nl = static_cast<double>(k);
                        const double nr = n - nl;
                        const double gain = left * left / nl + left * left / nr;
                        if (gain > best_gain)
                        {
                            best_gain = gain;
                            best_feature = static_cast<int>(f);
                            best_threshold = 0.5 * (xl + xr);
                        }
                    }
                }
                if (best_feature < 0)
                    return node_id;

                std::vector<std::size_t> li, ri;
                for (auto i : idx)
                    (s_.x[i][static_cast<std::size_t>(best_feature)] <= best_threshold ? li : ri).push_back(i);
                idx.clear();
                idx.shrink_to_fit();

                const int l = grow(t, li, depth + 1);
                const int r = grow(t, ri, depth + 1);
                auto &node = t.nodes[static_cast<std::size_t>(node_id)];
                node.feature = best_feature;
                node.threshold = best_threshold;
                node.left = l;
                node.right = r;
                return node_id;
            }

            const Samples &s_;
            std::size_t max_depth_;
            std::size_t min_leaf_;
        };

        std::size_t depth_from(const RegressionTree &t, int node)
        {
            const auto &n = t.nodes[static_cast<std::size_t>(node)];
            if (n.feature < 0)
                return 0;
            return 1 + std::max(depth_from(t, n.left), depth_from(t, n.right));
        }
    }

    double LinearModel::predict(const Features &x) const noexcept
    {
        double acc = intercept;
        for (std::size_t f = 0; f < feature_count; ++f)
            acc += coefficients[f] * x[f];
        return acc;
    }

    LinearModel linreg_fit(const Samples &train, const LinregOptions &options)
    {
        check_train(train);
        const double n = static_cast<double>(train.size());

        // Centring decouples the intercept and conditions the 3 x 3 system.
        Features xm{};
        double ym = 0.0;
        for (std::size_t i = 0; i < train.size(); ++i)
        {
            for (std::size_t f = 0; f < feature_count; ++f)
                xm[f] += train.x[i][f];
            ym += train.y[i];
        }
        for (auto &v : xm)
            v /= n;
        ym /= n;

        Mat3 a{};
        Features b{};
        for (std::size_t i = 0; i < train.size(); ++i)
        {
            Features c;
            for (std::size_t f = 0; f < feature_count; ++f)
                c[f] = train.x[i][f] - xm[f];
            const double yc = train.y[i] - ym;
            for (std::size_t r = 0; r < 3; ++r)
            {
                b[r] += c[r] * yc;
                for (std::size_t k = 0; k < 3; ++k)
                    a[r][k] += c[r] * c[k];
            }
        }

        double scale = 0.0;
        for (std::size_t r = 0; r < 3; ++r)
            scale = std::max(scale, std::abs(a[r][r]));
        if (scale == 0.0)
            scale = 1.0;

        Features w{};
        if (!solve3(a, b, scale, w))
        {
            if (!options.ridge_fallback)
                throw SingularDesign("design matrix is rank deficient");
            for (std::size_t r = 0; r < 3; ++r)
                a[r][r] += options.ridge_lambda;
            if (!solve3(a, b, 0.0, w))
                throw SingularDesign("design matrix is rank deficient even with the ridge term");
        }
        else
        {
            // One refinement step against the same system.
            Features res = b;
            for (std::size_t r = 0; r < 3; ++r)
                for (std::size_t k = 0; k < 3; ++k)
                    res[r] -= a[r][k] * w[k];
            Features dw{};
            if (solve3(a, res, scale, dw))
                for (std::size_t r = 0; r < 3; ++r)
                    w[r] += dw[r];
        }

        LinearModel m;
        m.coefficients = w;
        m.intercept = ym;
        for (std::size_t f = 0; f < feature_count; ++f)
            m.intercept -= w[f] * xm[f];
        return m;
    }

    double RegressionTree::predict(const Features &x) const
    {
        std::size_t i = 0;
        while (nodes[i].feature >= 0)
            i = static_cast<std::size_t>(x[static_cast<std::size_t>(nodes[i].feature)] <= nodes[i].threshold
                                             ? nodes[i].left
                                             : nodes[i].right);
        return nodes[i].value;
    }

    std::size_t RegressionTree::depth() const
    {
        return nodes.empty() ? 0 : depth_from(*this, 0);
    }

    RegressionTree tree_fit(const Samples &train, std::size_t max_depth, std::size_t min_leaf)
    {
        check_train(train);
        if (min_leaf == 0)
            throw InvalidHyperparameter("min_leaf must be at least 1");
        std::vector<std::size_t> idx(train.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        return TreeBuilder(train, max_depth, min_leaf).build(std::move(idx));
    }

    double Forest::predict(const Features &x) const
    {
        double acc = 0.0;
        for (const auto &t : trees)
            acc += t.predict(x);
        return acc / static_cast<double>(trees.size());
    }

    Forest forest_fit(const Samples &train, std::size_t n_trees, std::size_t max_depth, std::uint64_t seed,
                      const ForestOptions &options)
    {
        check_train(train);
        if (n_trees == 0)
            throw InvalidHyperparameter("a forest needs at least one tree");
        if (options.min_leaf == 0)
            throw InvalidHyperparameter("min_leaf must be at least 1");

        Forest forest;
        forest.trees.reserve(n_trees);
        const std::size_t n = train.size();
        for (std::size_t t = 0; t < n_trees; ++t)
        {
            std::vector<std::size_t> idx(n);
            if (options.bootstrap)
            {
                auto rng = make_stream(seed, {0xF0535u, t});
                std::uniform_int_distribution<std::size_t> pick(0, n - 1);
                for (auto &i : idx)
                    i = pick(rng);
                std::sort(idx.begin(), idx.end());
            }
            else
                std::iota(idx.begin(), idx.end(), std::size_t{0});
            forest.trees.push_back(TreeBuilder(train, max_depth, options.min_leaf).build(std::move(idx)));
        }
        return forest;
    }

    double GradientBoosting::predict(const Features &x) const
    {
        double acc = init;
        for (const auto &t : stages)
            acc += learning_rate * t.predict(x);
        return acc;
    }

    GbrtFit gbrt_fit(const Samples &train, std::size_t n_stages, double learning_rate, std::size_t max_depth,
                     std::uint64_t seed, const GbrtOptions &options)
    {
        check_train(train);
        if (n_stages == 0)
            throw InvalidHyperparameter("n_stages must be at least 1");
        if (max_depth == 0)
            throw InvalidHyperparameter("max_depth must be at least 1");
        if (!(learning_rate > 0.0 && learning_rate <= 1.0))
            throw InvalidHyperparameter("learning_rate must lie in (0, 1]");
        if (!(options.subsample > 0.0 && options.subsample <= 1.0))
            throw InvalidHyperparameter("subsample must lie in (0, 1]");
        if (options.min_leaf == 0)
            throw InvalidHyperparameter("min_leaf must be at least 1");

        const std::size_t n = train.size();
        GbrtFit fit;
        fit.model.learning_rate = learning_rate;
        fit.model.init = std::accumulate(train.y.begin(), train.y.end(), 0.0) / static_cast<double>(n);

        std::vector<double> f(n, fit.model.init);
        auto train_mse = [&] {
            double sse = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                sse += (train.y[i] - f[i]) * (train.y[i] - f[i]);
            return sse / static_cast<double>(n);
        };
        fit.stage_train_mse.push_back(train_mse());

        Samples residual{train.x, std::vector<double>(n)};
        const auto n_sub = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::llround(options.subsample * static_cast<double>(n))));
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), std::size_t{0});

        for (std::size_t stage = 0; stage < n_stages; ++stage)
        {
            for (std::size_t i = 0; i < n; ++i)
                residual.y[i] = train.y[i] - f[i];

            std::vector<std::size_t> idx = all;
            if (n_sub < n)
            {
                auto rng = make_stream(seed, {0x6B27u, stage});
                std::shuffle(idx.begin(), idx.end(), rng);
                idx.resize(n_sub);
                std::sort(idx.begin(), idx.end());
            }
            RegressionTree tree = TreeBuilder(residual, max_depth, options.min_leaf).build(std::move(idx));
            for (std::size_t i = 0; i < n; ++i)
                f[i] += learning_rate * tree.predict(train.x[i]);
            fit.model.stages.push_back(std::move(tree));
            fit.stage_train_mse.push_back(train_mse());
        }
        return fit;
    }
}
