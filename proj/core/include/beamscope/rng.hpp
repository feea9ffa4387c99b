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

#ifndef BEAMSCOPE_RNG_HPP
#define BEAMSCOPE_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace beamscope
{
    /// Random stream handle passed explicitly to every sampling routine.
    using RngStream = std::mt19937_64;

    /// SplitMix64 finalizer.
    constexpr std::uint64_t mix64(std::uint64_t x) noexcept
    {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    /// Seed of an independent substream keyed by a master seed and a tuple of indices.
    /// Distinct keys give decorrelated seeds; the result only depends on the key values.
    constexpr std::uint64_t substream_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys) noexcept
    {
        std::uint64_t h = mix64(master);
        for (std::uint64_t k : keys)
            h = mix64(h ^ mix64(k + 0x632BE59BD9B4E019ull));
        return h;
    }

    inline RngStream make_stream(std::uint64_t master, std::initializer_list<std::uint64_t> keys)
    {
        return RngStream(substream_seed(master, keys));
    }
}

#endif
