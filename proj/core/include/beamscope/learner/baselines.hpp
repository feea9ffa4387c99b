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

#ifndef BEAMSCOPE_LEARNER_BASELINES_HPP
#define BEAMSCOPE_LEARNER_BASELINES_HPP

// Classical regressors the neural predictor is compared against.

#include "beamscope/learner/data.hpp"

#include <cstdint>
#include <vector>

namespace beamscope::learn
{
    //
    // Ordinary least squares
    //

    struct LinearModel
    {
        double intercept = 0.0;
        Features coefficients{};

        double predict(const Features &x) const noexcept;
        bool operator==(const LinearModel &) const = default;
    };

    struct LinregOptions
    {
        bool ridge_fallback = true;
        double ridge_lambda = 1e-8;
    };

    /// Normal equations on [1, alpha, beta, d]. A singular design either gets the ridge term
    /// or raises SingularDesign.
    LinearModel linreg_fit(const Samples &train, const LinregOptions &options = {});

    //
    // CART regression trees and ensembles
    //

    struct TreeNode
    {
        int feature = -1; ///< -1 marks a leaf
        double threshold = 0.0;
        int left = -1;
        int right = -1;
        double value = 0.0;
        bool operator==(const TreeNode &) const = default;
    };

    /// Node 0 is the root; `x[feature] <= threshold` descends left.
    struct RegressionTree
    {
        std::vector<TreeNode> nodes;

        double predict(const Features &x) const;
        std::size_t depth() const;
        bool operator==(const RegressionTree &) const = default;
    };

    /// Variance-reduction splits, midpoint thresholds. max_depth 0 yields a single leaf holding the mean.
    RegressionTree tree_fit(const Samples &train, std::size_t max_depth, std::size_t min_leaf = 1);

    struct Forest
    {
        std::vector<RegressionTree> trees;

        double predict(const Features &x) const;
        bool operator==(const Forest &) const = default;
    };

    struct ForestOptions
    {
        std::size_t min_leaf = 1;
        bool bootstrap = true;
    };

    Forest forest_fit(const Samples &train, std::size_t n_trees, std::size_t max_depth, std::uint64_t seed,
                      const ForestOptions &options = {});

    struct GradientBoosting
    {
        double init = 0.0;
        double learning_rate = 0.1;
        std::vector<RegressionTree> stages;

        double predict(const Features &x) const;
        bool operator==(const GradientBoosting &) const = default;
    };

    struct GbrtOptions
    {
        std::size_t min_leaf = 1;
        double subsample = 1.0; ///< fraction of rows drawn per stage, without replacement
    };

    struct GbrtFit
    {
        GradientBoosting model;
        std::vector<double> stage_train_mse; ///< entry 0 is the constant model, entry k after stage k
    };

    GbrtFit gbrt_fit(const Samples &train, std::size_t n_stages, double learning_rate, std::size_t max_depth,
                     std::uint64_t seed, const GbrtOptions &options = {});
}

#endif
