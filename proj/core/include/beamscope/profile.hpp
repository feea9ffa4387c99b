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

#ifndef BEAMSCOPE_PROFILE_HPP
#define BEAMSCOPE_PROFILE_HPP

#include "beamscope/beam_model.hpp"
#include "beamscope/channel_model.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace beamscope
{
    enum class MetricKind
    {
        RsrpDbm,
        DataRateGbps
    };

    std::string_view to_string(MetricKind kind) noexcept;
    std::optional<MetricKind> parse_metric_kind(std::string_view s) noexcept;
    std::string_view metric_unit(MetricKind kind) noexcept;

    /// Everything needed to reproduce one testbed's profiling experiment.
    struct TestbedProfile
    {
        std::string name;
        std::string codebook_kind = "interdigital"; ///< "interdigital" or "ni"
        std::string codebook_weights;               ///< optional W_BB override table, as written in the file
        Codebook codebook = make_interdigital_codebook();
        ChannelParams channel;
        std::optional<RateParams> rate;
        double if_freq_ghz = 0.0; ///< metadata only
        std::vector<int> alpha_sweep;
        double beta_range_deg = 20.0;
        double beta_step_deg = 5.0;
        double d_min_ft = 4.0;
        double d_max_ft = 8.0;
        double d_step_ft = 1.0;
        MetricKind metric_kind = MetricKind::RsrpDbm;
        std::size_t samples_per_spot = 100;
        double top_fraction = 0.1;

        std::size_t line_count() const;     ///< number of beta lines
        std::size_t distance_count() const; ///< spots per line
        double beta_at(std::size_t line) const;
        double distance_at(std::size_t index) const;

        void validate() const; // throws InvalidProfile
        bool operator==(const TestbedProfile &) const = default;
    };

    /// Parse the key = value profile format. Relative `codebook_weights` paths resolve against `base_dir`.
    TestbedProfile read_profile(std::istream &is, const std::filesystem::path &base_dir = {});
    TestbedProfile load_profile_file(const std::filesystem::path &path);
    void write_profile(std::ostream &os, const TestbedProfile &profile);

    /// Text of the shipped profiles `interdigital27` and `ni71`.
    std::string builtin_profile_text(std::string_view name);
    std::vector<std::string> builtin_profile_names();

    /// Resolve a profile by name: `<dir>/<name>.profile` under BEAMSCOPE_PROFILE_DIR first, then the built-ins.
    /// A value naming an existing file is loaded directly. Throws UnknownProfile.
    TestbedProfile find_profile(std::string_view name_or_path);
}

#endif
