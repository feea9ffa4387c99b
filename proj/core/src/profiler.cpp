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

#include "beamscope/profiler.hpp"

#include "beamscope/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

namespace beamscope
{
    SpotGrid build_virtual_map(const TestbedProfile &profile, double alpha_deg)
    {
        profile.validate();
        SpotGrid grid;
        grid.alpha_deg = alpha_deg;
        const std::size_t lines = profile.line_count();
        const std::size_t dists = profile.distance_count();
        grid.spots.reserve(lines * dists);
        for (std::size_t l = 0; l < lines; ++l)
        {
            const double beta = profile.beta_at(l);
            for (std::size_t k = 0; k < dists; ++k)
                grid.spots.push_back({beta, profile.distance_at(k), alpha_deg + beta});
        }
        return grid;
    }

    double spot_metric(const TestbedProfile &profile, int beam_id, const Spot &spot, const FadingSample &zeta)
    {
        const ChannelParams &ch = profile.channel;
        const double rsrp = rsrp_at_offset_dbm(profile.codebook, beam_id, spot.beta_deg, 0.0, spot.distance_ft, zeta, ch);
        if (profile.metric_kind == MetricKind::RsrpDbm)
            return rsrp;
        const double raw = rsrp + ch.noise_offset_db();
        return data_rate_gbps(snr_db(raw, ch.noise_ref_dbm), *profile.rate);
    }

    double measure_spot(const TestbedProfile &profile, int beam_id, const Spot &spot, RngStream &rng)
    {
        if (!profile.channel.fading_enabled || profile.channel.fading_std == 0.0)
            return spot_metric(profile, beam_id, spot, FadingSample{});

        const std::size_t n = profile.samples_per_spot;
        std::vector<double> samples(n);
        for (auto &s : samples)
            s = spot_metric(profile, beam_id, spot, sample_fading(rng, profile.channel));

        const double kf = std::ceil(profile.top_fraction * static_cast<double>(n) - 1e-9);
        const std::size_t k = std::clamp<std::size_t>(static_cast<std::size_t>(kf), 1, n);
        std::partial_sort(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(k), samples.end(),
                          std::greater<>());
        double sum = 0.0;
        for (std::size_t i = 0; i < k; ++i)
            sum += samples[i];
        return sum / static_cast<double>(k);
    }

    Dataset run_sweep(const TestbedProfile &profile, std::uint64_t master_seed, unsigned workers)
    {
        profile.validate();
        const std::size_t per_beam = profile.line_count() * profile.distance_count();
        const std::size_t n_beams = profile.alpha_sweep.size();
        const std::size_t total = per_beam * n_beams;

        std::vector<SpotGrid> grids;
        grids.reserve(n_beams);
        for (int id : profile.alpha_sweep)
            grids.push_back(build_virtual_map(profile, profile.codebook.beam(id).azimuth_deg));

        Dataset ds;
        ds.profile_name = profile.name;
        ds.seed = master_seed;
        ds.records.resize(total);

        auto run_cell = [&](std::size_t cell) {
            const std::size_t b = cell / per_beam;
            const std::size_t s = cell % per_beam;
            const int beam_id = profile.alpha_sweep[b];
            const Spot &spot = grids[b].spots[s];
            auto rng = make_stream(master_seed, {static_cast<std::uint64_t>(beam_id), s});
            ds.records[cell] = {grids[b].alpha_deg, spot.beta_deg, spot.distance_ft, profile.metric_kind,
                                measure_spot(profile, beam_id, spot, rng)};
        };

        if (workers == 0)
            workers = std::max(1u, std::thread::hardware_concurrency());
        workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));

        if (workers <= 1)
        {
            for (std::size_t c = 0; c < total; ++c)
                run_cell(c);
            return ds;
        }

        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                try
                {
                    for (std::size_t c = next++; c < total; c = next++)
                        run_cell(c);
                }
                catch (...)
                {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                    next = total;
                }
            });
        pool.clear();
        if (failure)
            std::rethrow_exception(failure);
        return ds;
    }
}
