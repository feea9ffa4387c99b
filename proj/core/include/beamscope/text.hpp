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

#ifndef BEAMSCOPE_TEXT_HPP
#define BEAMSCOPE_TEXT_HPP

// Locale-independent number formatting and parsing shared by all file formats.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace beamscope::text
{
    /// Shortest decimal form that parses back to the same double.
    std::string format_shortest(double v);

    /// Scientific form with 17 significant digits.
    std::string format_sig17(double v);

    /// Fixed-point form with `decimals` digits after the point.
    std::string format_fixed(double v, int decimals);

    std::optional<double> parse_double(std::string_view s);
    std::optional<std::int64_t> parse_int(std::string_view s);
    std::optional<std::uint64_t> parse_uint(std::string_view s);

    std::string_view trim(std::string_view s);
    std::vector<std::string_view> split(std::string_view s, char sep);

    /// Parse "32,16,8" into counts; nullopt on any malformed or non-positive entry.
    std::optional<std::vector<std::size_t>> parse_count_list(std::string_view s);
    std::string join_counts(const std::vector<std::size_t> &v, char sep = ',');
}

#endif
