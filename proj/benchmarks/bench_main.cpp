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

#include "beamscope/beam_model.hpp"
#include "beamscope/learner/mlp.hpp"
#include "beamscope/profiler.hpp"
#include "beamscope/rng.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace
{
    using namespace beamscope;

    void BM_FejerKernel(benchmark::State &state)
    {
        const auto m = static_cast<std::size_t>(state.range(0));
        double x = 0.001;
        for (auto _ : state)
        {
            benchmark::DoNotOptimize(fejer_kernel(m, x));
            x += 1e-6;
        }
    }
    BENCHMARK(BM_FejerKernel)->Arg(8)->Arg(64);

    void BM_RunSweep(benchmark::State &state)
    {
        const TestbedProfile p = find_profile(state.range(0) ? "ni71" : "interdigital27");
        const auto workers = static_cast<unsigned>(state.range(1));
        for (auto _ : state)
            benchmark::DoNotOptimize(run_sweep(p, 42, workers));
    }
    BENCHMARK(BM_RunSweep)->Args({0, 1})->Args({1, 1})->Args({1, 4})->Unit(benchmark::kMillisecond);

    void BM_BackwardBatch(benchmark::State &state)
    {
        const learn::Mlp net = learn::mlp_new({32, 16, 8, 4, 2}, 7);
        RngStream rng = make_stream(1, {2});
        std::normal_distribution<double> n01;
        const auto batch = static_cast<std::size_t>(state.range(0));
        std::vector<learn::Features> x(batch);
        std::vector<double> y(batch);
        for (std::size_t i = 0; i < batch; ++i)
        {
            x[i] = {n01(rng), n01(rng), n01(rng)};
            y[i] = n01(rng);
        }
        for (auto _ : state)
            benchmark::DoNotOptimize(learn::backward_batch(net, x, y));
        state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * batch));
    }
    BENCHMARK(BM_BackwardBatch)->Arg(10)->Arg(100);
}

BENCHMARK_MAIN();
