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

#ifndef BEAMSCOPE_CHANNEL_MODEL_HPP
#define BEAMSCOPE_CHANNEL_MODEL_HPP

#include "beamscope/beam_model.hpp"
#include "beamscope/rng.hpp"

#include <complex>
#include <limits>

namespace beamscope
{
    inline constexpr double feet_to_meters = 0.3048;
    inline constexpr std::size_t ofdm_subcarriers = 64;

    /// Thermal noise power kTB at 290 K plus a receiver noise figure, in dBm.
    double thermal_noise_dbm(double bandwidth_hz, double noise_figure_db);

    struct ChannelParams
    {
        double carrier_freq_ghz = 27.0;
        double tx_power_dbm = 20.0;
        /// Receiver noise power over the measurement bandwidth (64 x 120 kHz, NF 10 dB by default).
        double noise_ref_dbm = thermal_noise_dbm(ofdm_subcarriers * 120e3, 10.0);
        /// When set, RSRP is reported relative to noise_ref_dbm; otherwise it is the raw received power.
        bool noise_referenced = false;
        double fading_std = 0.1;
        bool fading_enabled = true;

        double noise_offset_db() const noexcept { return noise_referenced ? noise_ref_dbm : 0.0; }
        void validate() const;
        bool operator==(const ChannelParams &) const = default;
    };

    struct FadingSample
    {
        std::complex<double> value{1.0, 0.0};
    };

    struct RateParams
    {
        double bandwidth_hz = ofdm_subcarriers * 5e6;
        double snr_floor_db = 0.0;
        double rate_cap_gbps = std::numeric_limits<double>::infinity();

        void validate() const;
        bool operator==(const RateParams &) const = default;
    };

    /// Free-space path loss with distance given in feet.
    double path_loss_db(double freq_ghz, double distance_ft);

    /// LOS-dominant perturbation 1 + (g_r + i g_i), g ~ N(0, fading_std^2) per quadrature.
    FadingSample sample_fading(RngStream &rng, const ChannelParams &params);

    /// Received power for a given linear beam power gain toward the receiver. The boresight case
    /// (gain = M, zeta = 1, W_BB = 1) reduces to tx_power - PL + 10 log10(M).
    double received_power_dbm(double beam_power_gain, std::size_t element_count, double baseband_weight,
                              double distance_ft, const FadingSample &zeta, const ChannelParams &params);

    /// RSRP toward an observation direction in the array's global frame.
    double rsrp_dbm(const Codebook &codebook, int beam_id, double obs_az_deg, double obs_el_deg, double distance_ft,
                    const FadingSample &zeta, const ChannelParams &params);

    /// RSRP for a receiver at an angular offset from the beam boresight (beam-aligned frame).
    double rsrp_at_offset_dbm(const Codebook &codebook, int beam_id, double offset_az_deg, double offset_el_deg,
                              double distance_ft, const FadingSample &zeta, const ChannelParams &params);

    inline double snr_db(double rsrp_dbm_value, double noise_power_dbm) noexcept
    {
        return rsrp_dbm_value - noise_power_dbm;
    }

    /// Truncated Shannon rate: zero below the SNR floor, otherwise min(cap, B log2(1 + snr)).
    double data_rate_gbps(double snr_db_value, const RateParams &rate_params) noexcept;
}

#endif
