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

#include "beamscope/learner/data.hpp"

#include "beamscope/errors.hpp"
#include "beamscope/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace beamscope::learn
{
    Samples to_samples(const Dataset &dataset)
    {
        Samples s;
        s.x.reserve(dataset.size());
        s.y.reserve(dataset.size());
        for (const auto &r : dataset.records)
        {
            s.x.push_back({r.alpha_deg, r.beta_deg, r.distance_ft});
            s.y.push_back(r.value);
        }
        return s;
    }

    DatasetSplit split_dataset(const Dataset &dataset, double train_fraction, std::uint64_t seed)
    {
        if (dataset.empty())
            throw EmptyDataset("cannot split an empty dataset");
        if (!(train_fraction > 0.0 && train_fraction < 1.0))
            throw InvalidHyperparameter("train_fraction must lie in (0, 1)");

        const std::size_t n = dataset.size();
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        auto rng = make_stream(seed, {0x5EED5111u});
        std::shuffle(order.begin(), order.end(), rng);

        auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));
        if (n >= 2)
            n_train = std::clamp<std::size_t>(n_train, 1, n - 1);
        else
            n_train = n;

        DatasetSplit out;
        out.train.profile_name = out.test.profile_name = dataset.profile_name;
        out.train.seed = out.test.seed = dataset.seed;
        out.train_indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
        out.test_indices.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
        for (auto i : out.train_indices)
            out.train.records.push_back(dataset.records[i]);
        for (auto i : out.test_indices)
            out.test.records.push_back(dataset.records[i]);
        return out;
    }

    Scaler Scaler::fit(std::span<const Features> rows)
    {
        if (rows.empty())
            throw EmptyDataset("cannot fit a scaler on no rows");
        Scaler s;
        const double n = static_cast<double>(rows.size());
        for (std::size_t f = 0; f < feature_count; ++f)
        {
            double mean = 0.0;
            for (const auto &r : rows)
                mean += r[f];
            mean /= n;
            double var = 0.0;
            for (const auto &r : rows)
                var += (r[f] - mean) * (r[f] - mean);
            var /= n;
            if (!(var > 0.0))
                throw ZeroVariance("feature " + std::to_string(f) + " is constant on the training split");
            s.mean[f] = mean;
            s.stddev[f] = std::sqrt(var);
        }
        return s;
    }

    Features Scaler::apply(const Features &x) const noexcept
    {
        Features z;
        for (std::size_t f = 0; f < feature_count; ++f)
            z[f] = (x[f] - mean[f]) / stddev[f];
        return z;
    }

    TargetScaler TargetScaler::fit(std::span<const double> y)
    {
        if (y.empty())
            throw EmptyDataset("cannot fit a target scaler on no values");
        TargetScaler s;
        const double n = static_cast<double>(y.size());
        s.mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
        double var = 0.0;
        for (double v : y)
            var += (v - s.mean) * (v - s.mean);
        var /= n;
        s.stddev = var > 0.0 ? std::sqrt(var) : 1.0;
        return s;
    }
}
