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

#ifndef BEAMSCOPE_LEARNER_METRICS_HPP
#define BEAMSCOPE_LEARNER_METRICS_HPP

#include <span>

namespace beamscope::learn
{
    double mse(std::span<const double> pred, std::span<const double> target);

    /// 1 - SS_res / SS_tot. Throws ZeroVariance when the target is constant.
    double r2(std::span<const double> pred, std::span<const double> target);
}

#endif
