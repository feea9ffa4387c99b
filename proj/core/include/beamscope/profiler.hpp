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

#ifndef BEAMSCOPE_PROFILER_HPP
#define BEAMSCOPE_PROFILER_HPP

#include "beamscope/dataset.hpp"
#include "beamscope/profile.hpp"
#include "beamscope/rng.hpp"

#include <cstdint>
#include <vector>

namespace beamscope
{
    /// One receiver placement on the virtual map. beta_deg is the signed offset from the beam boresight.
    struct Spot
    {
        double beta_deg = 0.0;
        double distance_ft = 0.0;
        double rx_orientation_deg = 0.0; ///< alpha + beta, kept for provenance
        bool operator==(const Spot &) const = default;
    };

    /// Spots ordered by line (beta ascending), then distance ascending.
    struct SpotGrid
    {
        double alpha_deg = 0.0;
        std::vector<Spot> spots;
    };

    SpotGrid build_virtual_map(const TestbedProfile &profile, double alpha_deg);

    /// Metric for a single channel realization.
    double spot_metric(const TestbedProfile &profile, int beam_id, const Spot &spot, const FadingSample &zeta);

    /// Mean of the top ceil(top_fraction * samples_per_spot) metrics over independent fading draws.
    double measure_spot(const TestbedProfile &profile, int beam_id, const Spot &spot, RngStream &rng);

    /// Full beam x spot sweep. Cell (beam, spot index) draws from its own substream of `master_seed`,
    /// so the output does not depend on `workers`. workers == 0 picks the hardware concurrency.
    Dataset run_sweep(const TestbedProfile &profile, std::uint64_t master_seed, unsigned workers = 1);
}

#endif
