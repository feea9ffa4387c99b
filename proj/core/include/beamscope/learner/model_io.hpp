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

#ifndef BEAMSCOPE_LEARNER_MODEL_IO_HPP
#define BEAMSCOPE_LEARNER_MODEL_IO_HPP

#include "beamscope/learner/baselines.hpp"
#include "beamscope/learner/train.hpp"

#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <variant>

namespace beamscope::learn
{
    inline constexpr int model_format_version = 1;

    /// Any fitted predictor the toolkit can store and reload.
    using Model = std::variant<MlpModel, LinearModel, RegressionTree, Forest, GradientBoosting>;

    std::string_view model_kind(const Model &m) noexcept;
    double predict(const Model &m, const Features &x);

    // Text format:
    //   beamscope-model <version>
    //   kind <mlp|linreg|tree|forest|gbrt>
    //   ... kind-specific blocks, numbers in 17 significant digits, matrices row-major.
    // Reloading reproduces predictions bit for bit. Wrong magic or version raises VersionMismatch,
    // malformed content SchemaError.
    void store_model(std::ostream &os, const Model &m);
    Model load_model(std::istream &is);

    void store_model(const std::filesystem::path &path, const Model &m);
    Model load_model(const std::filesystem::path &path);
}

#endif
