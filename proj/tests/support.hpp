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

#ifndef BEAMSCOPE_TESTS_SUPPORT_HPP
#define BEAMSCOPE_TESTS_SUPPORT_HPP

// Independent oracles and small helpers shared by the unit and acceptance suites.

#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>

namespace beamscope::testing
{
    inline constexpr double pi = 3.14159265358979323846;

    /// |sum_{k<m} e^{ikx}|^2 / m evaluated term by term in long double.
    inline double phasor_sum_power(std::size_t m, double x)
    {
        long double re = 0.0L, im = 0.0L;
        for (std::size_t k = 0; k < m; ++k)
        {
            const long double a = static_cast<long double>(k) * static_cast<long double>(x);
            re += std::cos(a);
            im += std::sin(a);
        }
        return static_cast<double>((re * re + im * im) / static_cast<long double>(m));
    }

    /// Array factor power of a uniform linear array steered to `steer_deg`, observed at `obs_deg`.
    inline double ula_power(std::size_t m, double spacing, double obs_deg, double steer_deg)
    {
        const double psi = 2.0 * pi * spacing *
                           (std::sin(obs_deg * pi / 180.0) - std::sin(steer_deg * pi / 180.0));
        return phasor_sum_power(m, psi);
    }

    /// Free-space path loss written out from the Friis form: 20 log10(4 pi d f / c).
    inline double friis_db(double freq_ghz, double distance_ft)
    {
        const double c = 299792458.0;
        const double d = distance_ft * 0.3048;
        return 20.0 * std::log10(4.0 * pi * d * freq_ghz * 1e9 / c);
    }

    inline double relative_error(double got, double want, double floor = 1e-300)
    {
        return std::abs(got - want) / std::max(std::abs(want), floor);
    }

    inline std::string slurp(const std::filesystem::path &p)
    {
        std::ifstream f(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
    }

    inline void spit(const std::filesystem::path &p, const std::string &content)
    {
        std::ofstream f(p, std::ios::binary | std::ios::trunc);
        f << content;
    }

    /// Fresh scratch directory under the system temp dir, removed on destruction.
    class ScratchDir
    {
    public:
        explicit ScratchDir(const std::string &tag)
        {
            std::random_device rd;
            path_ = std::filesystem::temp_directory_path() /
                    ("beamscope-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
            std::filesystem::create_directories(path_);
        }
        ~ScratchDir()
        {
            std::error_code ec;
            std::filesystem::remove_all(path_, ec);
        }
        ScratchDir(const ScratchDir &) = delete;
        ScratchDir &operator=(const ScratchDir &) = delete;

        const std::filesystem::path &path() const noexcept { return path_; }
        std::filesystem::path operator/(const std::string &name) const { return path_ / name; }

    private:
        std::filesystem::path path_;
    };
}

#endif
