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

#include "beamscope/profile.hpp"

#include "beamscope/errors.hpp"
#include "beamscope/text.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace beamscope
{
    namespace
    {
        // Rate constants calibrated once so that the boresight link at 71 GHz keeps a positive rate at
        // 5 ft (SNR 4.82 dB) and drops to zero at 6 ft (SNR 3.24 dB). Noise: 64 x 5 MHz, NF 10 dB.
        constexpr std::string_view ni71_text = R"(# NI 71 GHz testbed: 25-beam azimuth codebook, data-rate metric
name = ni71
codebook = ni
array_spacing = 0.5
carrier_freq_ghz = 71
if_freq_ghz = 8.5
tx_power_dbm = -10
noise_ref_dbm = -78.92368741102905
noise_referenced = false
fading_std = 0.1
fading_enabled = true
alpha_sweep = 1-25
beta_range_deg = 25
beta_step_deg = 5
d_min_ft = 1
d_max_ft = 6
d_step_ft = 1
metric = data_rate_gbps
samples_per_spot = 100
top_fraction = 0.1
rate_bandwidth_hz = 320000000
rate_snr_floor_db = 4
rate_cap_gbps = 2.5
)";

        constexpr std::string_view interdigital27_text = R"(# InterDigital 27 GHz testbed: 63-beam 9 x 7 codebook, RSRP metric
name = interdigital27
codebook = interdigital
array_spacing = 0.5
carrier_freq_ghz = 27
if_freq_ghz = 5.3
tx_power_dbm = 20
noise_ref_dbm = -95.12157499391299
noise_referenced = false
fading_std = 0.1
fading_enabled = true
alpha_sweep = 28-36
beta_range_deg = 20
beta_step_deg = 5
d_min_ft = 4
d_max_ft = 8
d_step_ft = 1
metric = rsrp_dbm
samples_per_spot = 100
top_fraction = 0.1
)";

        std::size_t grid_count(double span, double step, const char *what)
        {
            const double ratio = span / step;
            const double rounded = std::round(ratio);
            if (std::abs(ratio - rounded) > 1e-9)
                throw InvalidProfile(std::string(what) + " span is not a whole number of steps");
            return static_cast<std::size_t>(rounded) + 1;
        }

        std::optional<bool> parse_bool(std::string_view s)
        {
            if (s == "true" || s == "1" || s == "yes")
                return true;
            if (s == "false" || s == "0" || s == "no")
                return false;
            return std::nullopt;
        }

        /// "28-36" or "1,2,5-7"
        std::optional<std::vector<int>> parse_id_list(std::string_view s)
        {
            std::vector<int> out;
            for (auto part : text::split(s, ','))
            {
                part = text::trim(part);
                auto dash = part.find('-', 1);
                if (dash == std::string_view::npos)
                {
                    auto v = text::parse_int(part);
                    if (!v)
                        return std::nullopt;
                    out.push_back(static_cast<int>(*v));
                    continue;
                }
                auto lo = text::parse_int(part.substr(0, dash));
                auto hi = text::parse_int(part.substr(dash + 1));
                if (!lo || !hi || *lo > *hi)
                    return std::nullopt;
                for (auto v = *lo; v <= *hi; ++v)
                    out.push_back(static_cast<int>(v));
            }
            return out;
        }

        std::string format_id_list(const std::vector<int> &ids)
        {
            std::string out;
            std::size_t i = 0;
            while (i < ids.size())
            {
                std::size_t j = i;
                while (j + 1 < ids.size() && ids[j + 1] == ids[j] + 1)
                    ++j;
                if (!out.empty())
                    out += ',';
                out += std::to_string(ids[i]);
                if (j > i)
                    out += '-' + std::to_string(ids[j]);
                i = j + 1;
            }
            return out;
        }
    }

    std::string_view to_string(MetricKind kind) noexcept
    {
        return kind == MetricKind::RsrpDbm ? "rsrp_dbm" : "data_rate_gbps";
    }

    std::optional<MetricKind> parse_metric_kind(std::string_view s) noexcept
    {
        if (s == "rsrp_dbm")
            return MetricKind::RsrpDbm;
        if (s == "data_rate_gbps")
            return MetricKind::DataRateGbps;
        return std::nullopt;
    }

    std::string_view metric_unit(MetricKind kind) noexcept
    {
        return kind == MetricKind::RsrpDbm ? "dBm" : "Gb/s";
    }

    std::size_t TestbedProfile::line_count() const
    {
        return grid_count(2.0 * beta_range_deg, beta_step_deg, "beta");
    }

    std::size_t TestbedProfile::distance_count() const
    {
        return grid_count(d_max_ft - d_min_ft, d_step_ft, "distance");
    }

    double TestbedProfile::beta_at(std::size_t line) const
    {
        return -beta_range_deg + static_cast<double>(line) * beta_step_deg;
    }

    double TestbedProfile::distance_at(std::size_t index) const
    {
        return d_min_ft + static_cast<double>(index) * d_step_ft;
    }

    void TestbedProfile::validate() const
    {
        if (name.empty())
            throw InvalidProfile("profile has no name");
        channel.validate();
        if (!(beta_step_deg > 0.0))
            throw InvalidProfile("beta_step_deg must be positive");
        if (!(beta_range_deg >= 0.0))
            throw InvalidProfile("beta_range_deg must be non-negative");
        if (!(d_step_ft > 0.0))
            throw InvalidProfile("d_step_ft must be positive");
        if (!(d_min_ft > 0.0) || !(d_min_ft <= d_max_ft))
            throw InvalidProfile("distance range must satisfy 0 < d_min <= d_max");
        line_count();
        distance_count();
        if (alpha_sweep.empty())
            throw InvalidProfile("alpha_sweep is empty");
        for (int id : alpha_sweep)
            if (!codebook.contains(id))
                throw InvalidProfile("alpha_sweep references unknown beam " + std::to_string(id));
        if (samples_per_spot == 0)
            throw InvalidProfile("samples_per_spot must be at least 1");
        if (!(top_fraction > 0.0 && top_fraction <= 1.0))
            throw InvalidProfile("top_fraction must lie in (0, 1]");
        if (metric_kind == MetricKind::DataRateGbps && !rate)
            throw InvalidProfile("data-rate profile needs rate parameters");
        if (rate)
            rate->validate();
    }

    TestbedProfile read_profile(std::istream &is, const std::filesystem::path &base_dir)
    {
        std::map<std::string, std::pair<std::string, std::size_t>> kv;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(is, line))
        {
            ++lineno;
            auto t = text::trim(line);
            if (t.empty() || t.front() == '#')
                continue;
            auto eq = t.find('=');
            if (eq == std::string_view::npos)
                throw SchemaError("expected 'key = value'", lineno);
            std::string key(text::trim(t.substr(0, eq)));
            std::string value(text::trim(t.substr(eq + 1)));
            if (key.empty())
                throw SchemaError("empty key", lineno);
            if (!kv.emplace(key, std::make_pair(value, lineno)).second)
                throw SchemaError("duplicate key '" + key + "'", lineno);
        }

        auto take = [&](const std::string &key, bool required) -> std::optional<std::pair<std::string, std::size_t>> {
            auto it = kv.find(key);
            if (it == kv.end())
            {
                if (required)
                    throw SchemaError("missing key '" + key + "'", 0);
                return std::nullopt;
            }
            auto v = it->second;
            kv.erase(it);
            return v;
        };
        auto number = [&](const std::string &key, bool required, double fallback = 0.0) {
            auto v = take(key, required);
            if (!v)
                return fallback;
            auto d = text::parse_double(v->first);
            if (!d)
                throw SchemaError("key '" + key + "' is not a number", v->second);
            return *d;
        };
        auto boolean = [&](const std::string &key) {
            auto v = take(key, true);
            auto b = parse_bool(v->first);
            if (!b)
                throw SchemaError("key '" + key + "' is not a boolean", v->second);
            return *b;
        };

        TestbedProfile p;
        p.name = take("name", true)->first;

        auto cb = take("codebook", true);
        const double spacing = number("array_spacing", false, 0.5);
        if (cb->first == "interdigital")
            p.codebook = make_interdigital_codebook(spacing);
        else if (cb->first == "ni")
            p.codebook = make_ni_codebook(spacing);
        else
            throw SchemaError("unknown codebook '" + cb->first + "'", cb->second);
        p.codebook_kind = cb->first;
        if (auto w = take("codebook_weights", false))
        {
            p.codebook_weights = w->first;
            std::filesystem::path wp(w->first);
            if (wp.is_relative())
                wp = base_dir / wp;
            std::ifstream wf(wp);
            if (!wf)
                throw IoError("cannot open codebook weights '" + wp.string() + "'");
            p.codebook = p.codebook.with_weights(read_codebook_table(wf));
        }

        p.channel.carrier_freq_ghz = number("carrier_freq_ghz", true);
        p.if_freq_ghz = number("if_freq_ghz", false, 0.0);
        p.channel.tx_power_dbm = number("tx_power_dbm", true);
        p.channel.noise_ref_dbm = number("noise_ref_dbm", true);
        p.channel.noise_referenced = boolean("noise_referenced");
        p.channel.fading_std = number("fading_std", true);
        p.channel.fading_enabled = boolean("fading_enabled");

        auto sweep = take("alpha_sweep", true);
        auto ids = parse_id_list(sweep->first);
        if (!ids)
            throw SchemaError("malformed alpha_sweep", sweep->second);
        p.alpha_sweep = *ids;

        p.beta_range_deg = number("beta_range_deg", true);
        p.beta_step_deg = number("beta_step_deg", true);
        p.d_min_ft = number("d_min_ft", true);
        p.d_max_ft = number("d_max_ft", true);
        p.d_step_ft = number("d_step_ft", true);

        auto metric = take("metric", true);
        auto kind = parse_metric_kind(metric->first);
        if (!kind)
            throw SchemaError("unknown metric '" + metric->first + "'", metric->second);
        p.metric_kind = *kind;

        auto samples = take("samples_per_spot", true);
        auto n = text::parse_uint(samples->first);
        if (!n)
            throw SchemaError("samples_per_spot is not a count", samples->second);
        p.samples_per_spot = static_cast<std::size_t>(*n);
        p.top_fraction = number("top_fraction", true);

        const bool has_rate = kv.count("rate_bandwidth_hz") || kv.count("rate_snr_floor_db") || kv.count("rate_cap_gbps");
        if (has_rate)
        {
            RateParams r;
            r.bandwidth_hz = number("rate_bandwidth_hz", true);
            r.snr_floor_db = number("rate_snr_floor_db", true);
            r.rate_cap_gbps = number("rate_cap_gbps", true);
            p.rate = r;
        }

        if (!kv.empty())
        {
            const auto &[key, v] = *kv.begin();
            throw SchemaError("unknown key '" + key + "'", v.second);
        }

        p.validate();
        return p;
    }

    TestbedProfile load_profile_file(const std::filesystem::path &path)
    {
        std::ifstream f(path);
        if (!f)
            throw IoError("cannot open profile '" + path.string() + "'");
        return read_profile(f, path.parent_path());
    }

    void write_profile(std::ostream &os, const TestbedProfile &p)
    {
        using text::format_shortest;
        auto flag = [](bool b) { return b ? "true" : "false"; };
        os << "name = " << p.name << '\n'
           << "codebook = " << p.codebook_kind << '\n'
           << "array_spacing = " << format_shortest(p.codebook.geometry().spacing) << '\n';
        if (!p.codebook_weights.empty())
            os << "codebook_weights = " << p.codebook_weights << '\n';
        os << "carrier_freq_ghz = " << format_shortest(p.channel.carrier_freq_ghz) << '\n'
           << "if_freq_ghz = " << format_shortest(p.if_freq_ghz) << '\n'
           << "tx_power_dbm = " << format_shortest(p.channel.tx_power_dbm) << '\n'
           << "noise_ref_dbm = " << format_shortest(p.channel.noise_ref_dbm) << '\n'
           << "noise_referenced = " << flag(p.channel.noise_referenced) << '\n'
           << "fading_std = " << format_shortest(p.channel.fading_std) << '\n'
           << "fading_enabled = " << flag(p.channel.fading_enabled) << '\n'
           << "alpha_sweep = " << format_id_list(p.alpha_sweep) << '\n'
           << "beta_range_deg = " << format_shortest(p.beta_range_deg) << '\n'
           << "beta_step_deg = " << format_shortest(p.beta_step_deg) << '\n'
           << "d_min_ft = " << format_shortest(p.d_min_ft) << '\n'
           << "d_max_ft = " << format_shortest(p.d_max_ft) << '\n'
           << "d_step_ft = " << format_shortest(p.d_step_ft) << '\n'
           << "metric = " << to_string(p.metric_kind) << '\n'
           << "samples_per_spot = " << p.samples_per_spot << '\n'
           << "top_fraction = " << format_shortest(p.top_fraction) << '\n';
        if (p.rate)
            os << "rate_bandwidth_hz = " << format_shortest(p.rate->bandwidth_hz) << '\n'
               << "rate_snr_floor_db = " << format_shortest(p.rate->snr_floor_db) << '\n'
               << "rate_cap_gbps = " << format_shortest(p.rate->rate_cap_gbps) << '\n';
    }

    std::string builtin_profile_text(std::string_view name)
    {
        if (name == "interdigital27")
            return std::string(interdigital27_text);
        if (name == "ni71")
            return std::string(ni71_text);
        throw UnknownProfile("unknown profile '" + std::string(name) + "'");
    }

    std::vector<std::string> builtin_profile_names() { return {"interdigital27", "ni71"}; }

    TestbedProfile find_profile(std::string_view name_or_path)
    {
        const std::string name(name_or_path);
        if (name.empty())
            throw UnknownProfile("empty profile name");

        std::error_code ec;
        if (name.find('/') != std::string::npos || name.ends_with(".profile"))
        {
            if (std::filesystem::is_regular_file(name, ec))
                return load_profile_file(name);
            throw UnknownProfile("profile file '" + name + "' does not exist");
        }

        if (const char *dir = std::getenv("BEAMSCOPE_PROFILE_DIR"); dir && *dir)
        {
            auto candidate = std::filesystem::path(dir) / (name + ".profile");
            if (std::filesystem::is_regular_file(candidate, ec))
                return load_profile_file(candidate);
        }

        std::istringstream is(builtin_profile_text(name));
        return read_profile(is);
    }
}
