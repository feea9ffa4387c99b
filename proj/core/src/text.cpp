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

#include "beamscope/text.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace beamscope::text
{
    namespace
    {
        template <typename... Args>
        std::string to_chars_string(double v, Args... args)
        {
            std::array<char, 64> buf{};
            auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, args...);
            return std::string(buf.data(), res.ptr);
        }

        template <typename T>
        std::optional<T> parse_integral(std::string_view s)
        {
            s = trim(s);
            if (!s.empty() && s.front() == '+')
                s.remove_prefix(1);
            T v{};
            auto res = std::from_chars(s.data(), s.data() + s.size(), v);
            if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
                return std::nullopt;
            return v;
        }
    }

    std::string format_shortest(double v)
    {
        if (v == 0.0)
            return "0"; // folds -0
        return to_chars_string(v);
    }

    std::string format_sig17(double v)
    {
        if (v == 0.0)
            return "0";
        return to_chars_string(v, std::chars_format::scientific, 16);
    }

    std::string format_fixed(double v, int decimals)
    {
        std::string s = to_chars_string(v, std::chars_format::fixed, decimals);
        // "-0.00" prints as "0.00"
        if (!s.empty() && s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos)
            s.erase(0, 1);
        return s;
    }

    std::optional<double> parse_double(std::string_view s)
    {
        s = trim(s);
        if (!s.empty() && s.front() == '+')
            s.remove_prefix(1);
        double v = 0.0;
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v))
            return std::nullopt;
        return v;
    }

    std::optional<std::int64_t> parse_int(std::string_view s) { return parse_integral<std::int64_t>(s); }
    std::optional<std::uint64_t> parse_uint(std::string_view s) { return parse_integral<std::uint64_t>(s); }

    std::string_view trim(std::string_view s)
    {
        constexpr std::string_view ws = " \t\r\n";
        auto b = s.find_first_not_of(ws);
        if (b == std::string_view::npos)
            return {};
        auto e = s.find_last_not_of(ws);
        return s.substr(b, e - b + 1);
    }

    std::vector<std::string_view> split(std::string_view s, char sep)
    {
        std::vector<std::string_view> out;
        std::size_t start = 0;
        while (true)
        {
            auto pos = s.find(sep, start);
            if (pos == std::string_view::npos)
            {
                out.push_back(s.substr(start));
                return out;
            }
            out.push_back(s.substr(start, pos - start));
            start = pos + 1;
        }
    }

    std::optional<std::vector<std::size_t>> parse_count_list(std::string_view s)
    {
        std::vector<std::size_t> out;
        for (auto part : split(trim(s), ','))
        {
            auto v = parse_uint(part);
            if (!v || *v == 0)
                return std::nullopt;
            out.push_back(static_cast<std::size_t>(*v));
        }
        return out;
    }

    std::string join_counts(const std::vector<std::size_t> &v, char sep)
    {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i)
        {
            if (i)
                out += sep;
            out += std::to_string(v[i]);
        }
        return out;
    }
}
