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

#include "catch_amalgamated.hpp"

#include "beamscope/errors.hpp"
#include "beamscope/profile.hpp"

#include "support.hpp"

#include <cstdlib>
#include <sstream>

// Covered tests:
// - Built-in profiles: contents and calibration constants
// - Shipped profile files agree with the built-ins
// - Text round trip through write_profile
// - Schema errors with line numbers; semantic validation
// - Lookup order: explicit path, BEAMSCOPE_PROFILE_DIR, built-ins
// - Codebook weight overrides resolved relative to the profile file

using namespace beamscope;
using beamscope::testing::ScratchDir;
using beamscope::testing::spit;

namespace
{
    TestbedProfile parse(const std::string &text, const std::filesystem::path &base = {})
    {
        std::istringstream is(text);
        return read_profile(is, base);
    }

    std::size_t schema_line(const std::string &text)
    {
        try
        {
            parse(text);
        }
        catch (const SchemaError &e)
        {
            return e.line();
        }
        FAIL("no SchemaError for:\n" << text);
        return 0;
    }

    std::string replace_line(std::string text, const std::string &key, const std::string &line)
    {
        const auto pos = text.find("\n" + key + " ");
        REQUIRE(pos != std::string::npos);
        const auto end = text.find('\n', pos + 1);
        return text.replace(pos + 1, end - pos - 1, line);
    }

    std::filesystem::path source_dir()
    {
        const char *s = std::getenv("BEAMSCOPE_SOURCE_DIR");
        return s ? std::filesystem::path(s) : std::filesystem::path(".");
    }

    struct EnvGuard
    {
        explicit EnvGuard(const char *value)
        {
            if (const char *old = std::getenv("BEAMSCOPE_PROFILE_DIR"))
                saved = old;
            if (value)
                ::setenv("BEAMSCOPE_PROFILE_DIR", value, 1);
            else
                ::unsetenv("BEAMSCOPE_PROFILE_DIR");
        }
        ~EnvGuard()
        {
            if (saved)
                ::setenv("BEAMSCOPE_PROFILE_DIR", saved->c_str(), 1);
            else
                ::unsetenv("BEAMSCOPE_PROFILE_DIR");
        }
        std::optional<std::string> saved;
    };
}

TEST_CASE("Built-in InterDigital profile")
{
    EnvGuard env(nullptr);
    const TestbedProfile p = find_profile("interdigital27");
    CHECK(p.name == "interdigital27");
    CHECK(p.codebook.size() == 63);
    CHECK(p.channel.carrier_freq_ghz == 27.0);
    CHECK(p.if_freq_ghz == 5.3);
    CHECK(p.alpha_sweep == std::vector<int>{28, 29, 30, 31, 32, 33, 34, 35, 36});
    CHECK(p.line_count() == 9);
    CHECK(p.distance_count() == 5);
    CHECK(p.metric_kind == MetricKind::RsrpDbm);
    CHECK_FALSE(p.rate.has_value());
    CHECK(p.channel.noise_ref_dbm == ChannelParams{}.noise_ref_dbm);
    CHECK(p.samples_per_spot == 100);
    CHECK(p.top_fraction == 0.1);
}

TEST_CASE("Built-in NI profile")
{
    EnvGuard env(nullptr);
    const TestbedProfile p = find_profile("ni71");
    CHECK(p.codebook.size() == 25);
    CHECK(p.channel.carrier_freq_ghz == 71.0);
    CHECK(p.if_freq_ghz == 8.5);
    CHECK(p.alpha_sweep.size() == 25);
    CHECK(p.line_count() == 11);
    CHECK(p.distance_count() == 6);
    CHECK(p.metric_kind == MetricKind::DataRateGbps);
    REQUIRE(p.rate.has_value());
    CHECK(p.rate->bandwidth_hz == 64 * 5e6);
    CHECK(p.rate->snr_floor_db == 4.0);
    CHECK(p.rate->rate_cap_gbps == 2.5);
    CHECK(p.channel.noise_ref_dbm == Catch::Approx(thermal_noise_dbm(64 * 5e6, 10.0)).epsilon(1e-15));
}

TEST_CASE("Unknown built-in name")
{
    EnvGuard env(nullptr);
    CHECK_THROWS_AS(find_profile("ni60"), UnknownProfile);
    CHECK_THROWS_AS(find_profile(""), UnknownProfile);
    CHECK_THROWS_AS(builtin_profile_text("x"), UnknownProfile);
    CHECK_THROWS_AS(find_profile("/no/such/file.profile"), UnknownProfile);
    CHECK(builtin_profile_names() == std::vector<std::string>{"interdigital27", "ni71"});
}

TEST_CASE("Shipped profile files match the built-ins")
{
    for (const auto &name : builtin_profile_names())
    {
        const auto path = source_dir() / "profiles" / (name + ".profile");
        INFO(path);
        REQUIRE(std::filesystem::exists(path));
        CHECK(beamscope::testing::slurp(path) == builtin_profile_text(name));
        CHECK(load_profile_file(path) == parse(builtin_profile_text(name)));
    }
}

TEST_CASE("Profile text round trip")
{
    for (const auto &name : builtin_profile_names())
    {
        const TestbedProfile p = parse(builtin_profile_text(name));
        std::stringstream ss;
        write_profile(ss, p);
        CHECK(parse(ss.str()) == p);
    }
    TestbedProfile p = parse(builtin_profile_text("interdigital27"));
    p.alpha_sweep = {1, 5, 32, 63};
    p.channel.noise_referenced = true;
    p.beta_step_deg = 2.5;
    std::stringstream ss;
    write_profile(ss, p);
    CHECK(parse(ss.str()) == p);
}

TEST_CASE("alpha_sweep accepts ranges and lists")
{
    const std::string base = builtin_profile_text("interdigital27");
    CHECK(parse(replace_line(base, "alpha_sweep", "alpha_sweep = 1,5, 9")).alpha_sweep == std::vector<int>{1, 5, 9});
    CHECK(parse(replace_line(base, "alpha_sweep", "alpha_sweep = 30-32,40")).alpha_sweep ==
          std::vector<int>{30, 31, 32, 40});
}

TEST_CASE("Profile schema errors name the line")
{
    const std::string base = builtin_profile_text("interdigital27");
    CHECK(schema_line(base + "bogus_key = 3\n") == 21);
    CHECK(schema_line(base + "tx_power_dbm = 3\n") == 21);
    CHECK(schema_line(base + "just words\n") == 21);
    CHECK(schema_line(replace_line(base, "tx_power_dbm", "tx_power_dbm = loud")) == 7);
    CHECK(schema_line(replace_line(base, "metric", "metric = snr")) == 18);
    CHECK(schema_line(replace_line(base, "codebook", "codebook = hexagonal")) == 3);
    CHECK(schema_line(replace_line(base, "alpha_sweep", "alpha_sweep = 5-")) == 12);
    CHECK(schema_line(replace_line(base, "fading_enabled", "fading_enabled = maybe")) == 11);
    CHECK(schema_line(replace_line(base, "samples_per_spot", "samples_per_spot = -4")) == 19);
    // missing required key: no line applies
    CHECK(schema_line(replace_line(base, "d_step_ft", "# d_step_ft removed")) == 0);
}

TEST_CASE("Profile semantic validation")
{
    const std::string base = builtin_profile_text("interdigital27");
    CHECK_THROWS_AS(parse(replace_line(base, "d_max_ft", "d_max_ft = 8.5")), InvalidProfile);
    CHECK_THROWS_AS(parse(replace_line(base, "beta_step_deg", "beta_step_deg = 0")), InvalidProfile);
    CHECK_THROWS_AS(parse(replace_line(base, "beta_step_deg", "beta_step_deg = 3")), InvalidProfile);
    CHECK_THROWS_AS(parse(replace_line(base, "alpha_sweep", "alpha_sweep = 60-64")), InvalidProfile);
    CHECK_THROWS_AS(parse(replace_line(base, "top_fraction", "top_fraction = 1.5")), InvalidProfile);
    CHECK_THROWS_AS(parse(replace_line(base, "d_min_ft", "d_min_ft = 9")), InvalidProfile);
    CHECK_THROWS_AS(parse(replace_line(base, "metric", "metric = data_rate_gbps")), InvalidProfile);
    CHECK_THROWS_AS(parse(replace_line(base, "carrier_freq_ghz", "carrier_freq_ghz = -1")), InvalidProfile);
}

TEST_CASE("Degenerate single-spot profile")
{
    std::string text = builtin_profile_text("interdigital27");
    text = replace_line(text, "beta_range_deg", "beta_range_deg = 0");
    text = replace_line(text, "d_max_ft", "d_max_ft = 4");
    const TestbedProfile p = parse(text);
    CHECK(p.line_count() == 1);
    CHECK(p.distance_count() == 1);
    CHECK(p.beta_at(0) == 0.0);
    CHECK(p.distance_at(0) == 4.0);
}

TEST_CASE("Profile lookup through BEAMSCOPE_PROFILE_DIR")
{
    ScratchDir dir("profiles");
    std::string text = builtin_profile_text("ni71");
    text = replace_line(text, "name", "name = lab");
    text = replace_line(text, "tx_power_dbm", "tx_power_dbm = -3");
    spit(dir / "lab.profile", text);
    spit(dir / "ni71.profile", replace_line(builtin_profile_text("ni71"), "tx_power_dbm", "tx_power_dbm = 1"));

    {
        EnvGuard env(nullptr);
        CHECK_THROWS_AS(find_profile("lab"), UnknownProfile);
        CHECK(find_profile("ni71").channel.tx_power_dbm == -10.0);
    }
    {
        EnvGuard env(dir.path().c_str());
        CHECK(find_profile("lab").channel.tx_power_dbm == -3.0);
        CHECK(find_profile("ni71").channel.tx_power_dbm == 1.0);
        CHECK(find_profile("interdigital27").name == "interdigital27");
        CHECK_THROWS_AS(find_profile("missing"), UnknownProfile);
    }
    EnvGuard env(nullptr);
    CHECK(find_profile((dir / "lab.profile").string()).name == "lab");
}

TEST_CASE("Codebook weights resolve relative to the profile file")
{
    ScratchDir dir("weights");
    spit(dir / "w.csv", "beam_id,azimuth_deg,elevation_deg,baseband_weight\n13,0,0,0.5\n");
    const std::string text = builtin_profile_text("ni71") + "codebook_weights = w.csv\n";
    spit(dir / "weighted.profile", text);
    const TestbedProfile p = load_profile_file(dir / "weighted.profile");
    CHECK(p.codebook.beam(13).baseband_weight == 0.5);
    CHECK(p.codebook.beam(12).baseband_weight == 1.0);
    CHECK(p.codebook_weights == "w.csv");

    CHECK_THROWS_AS(parse(text, dir / "nowhere"), IoError);
    CHECK_THROWS_AS(load_profile_file(dir / "absent.profile"), IoError);
}
