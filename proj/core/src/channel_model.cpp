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

#include "beamscope/channel_model.hpp"

#include "beamscope/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace beamscope
{
    namespace
    {
        constexpr double boltzmann = 1.380649e-23;
        constexpr double reference_temperature_k = 290.0;

        void check_distance(double distance_ft)
        {
            if (!(distance_ft > 0.0) || !std::isfinite(distance_ft))
                throw InvalidDistance("distance must be positive, got " + std::to_string(distance_ft) + " ft");
        }
    }

    double thermal_noise_dbm(double bandwidth_hz, double noise_figure_db)
    {
        return 10.0 * std::log10(boltzmann * reference_temperature_k * bandwidth_hz * 1e3) + noise_figure_db;
    }

    void ChannelParams::validate() const
    {
        if (!(carrier_freq_ghz > 0.0))
            throw InvalidProfile("carrier frequency must be positive");
        if (!(fading_std >= 0.0))
            throw InvalidProfile("fading_std must be non-negative");
        if (!std::isfinite(tx_power_dbm) || !std::isfinite(noise_ref_dbm))
            throw InvalidProfile("tx power and noise reference must be finite");
    }

    void RateParams::validate() const
    {
        if (!(bandwidth_hz > 0.0))
            throw InvalidProfile("rate bandwidth must be positive");
        if (!(rate_cap_gbps > 0.0))
            throw InvalidProfile("rate cap must be positive");
        if (std::isnan(snr_floor_db))
            throw InvalidProfile("snr floor must be a number");
    }

    double path_loss_db(double freq_ghz, double distance_ft)
    {
        check_distance(distance_ft);
        const double d_m = distance_ft * feet_to_meters;
        const double f_hz = freq_ghz * 1e9;
        return 20.0 * std::log10(d_m) + 20.0 * std::log10(f_hz) - 147.55;
    }

    FadingSample sample_fading(RngStream &rng, const ChannelParams &params)
    {
        if (!params.fading_enabled || params.fading_std == 0.0)
            return {};
        std::normal_distribution<double> gauss(0.0, params.fading_std);
        const double re = gauss(rng);
        const double im = gauss(rng);
        return {{1.0 + re, im}};
    }

    double received_power_dbm(double beam_power_gain, std::size_t element_count, double baseband_weight,
                              double distance_ft, const FadingSample &zeta, const ChannelParams &params)
    {
        const double pl_lin = std::pow(10.0, path_loss_db(params.carrier_freq_ghz, distance_ft) / 10.0);
        const double m = static_cast<double>(element_count);
        const double beam_amplitude = std::sqrt(beam_power_gain / m);
        const std::complex<double> h = std::sqrt(m / pl_lin) * zeta.value * baseband_weight * beam_amplitude;
        return params.tx_power_dbm + 10.0 * std::log10(std::norm(h));
    }

    double rsrp_dbm(const Codebook &codebook, int beam_id, double obs_az_deg, double obs_el_deg, double distance_ft,
                    const FadingSample &zeta, const ChannelParams &params)
    {
        check_distance(distance_ft);
        const double gain = beam_gain(codebook, beam_id, obs_az_deg, obs_el_deg);
        return received_power_dbm(gain, codebook.geometry().element_count(), codebook.beam(beam_id).baseband_weight,
                                  distance_ft, zeta, params) -
               params.noise_offset_db();
    }

    double rsrp_at_offset_dbm(const Codebook &codebook, int beam_id, double offset_az_deg, double offset_el_deg,
                              double distance_ft, const FadingSample &zeta, const ChannelParams &params)
    {
        check_distance(distance_ft);
        const double gain = beam_gain_at_offset(codebook, beam_id, offset_az_deg, offset_el_deg);
        return received_power_dbm(gain, codebook.geometry().element_count(), codebook.beam(beam_id).baseband_weight,
                                  distance_ft, zeta, params) -
               params.noise_offset_db();
    }

    double data_rate_gbps(double snr_db_value, const RateParams &rate_params) noexcept
    {
        if (!(snr_db_value >= rate_params.snr_floor_db))
            return 0.0;
        const double snr_lin = std::pow(10.0, snr_db_value / 10.0);
        const double shannon = rate_params.bandwidth_hz * std::log2(1.0 + snr_lin) / 1e9;
        return std::min(rate_params.rate_cap_gbps, shannon);
    }
}
