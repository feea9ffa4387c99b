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

#include "beamscope/learner/metrics.hpp"

#include "beamscope/errors.hpp"

#include <string>

namespace beamscope::learn
{
    namespace
    {
        void check_lengths(std::span<const double> pred, std::span<const double> target)
        {
            if (pred.size() != target.size())
                throw LengthMismatch("prediction length " + std::to_string(pred.size()) + " vs target length " +
                                     std::to_string(target.size()));
            if (pred.empty())
                throw LengthMismatch("metrics need at least one value");
        }
    }

    double mse(std::span<const double> pred, std::span<const double> target)
    {
        check_lengths(pred, target);
        double sse = 0.0;
        for (std::size_t i = 0; i < pred.size(); ++i)
            sse += (pred[i] - target[i]) * (pred[i] - target[i]);
        return sse / static_cast<double>(pred.size());
    }

    double r2(std::span<const double> pred, std::span<const double> target)
    {
        check_lengths(pred, target);
        double mean = 0.0;
        for (double t : target)
            mean += t;
        mean /= static_cast<double>(target.size());

        double ss_tot = 0.0, ss_res = 0.0;
        for (std::size_t i = 0; i < target.size(); ++i)
        {
            ss_tot += (target[i] - mean) * (target[i] - mean);
            ss_res += (pred[i] - target[i]) * (pred[i] - target[i]);
        }
        if (!(ss_tot > 0.0))
            throw ZeroVariance("r2 is undefined for a constant target");
        return 1.0 - ss_res / ss_tot;
    }
}
