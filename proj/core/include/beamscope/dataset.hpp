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

#ifndef BEAMSCOPE_DATASET_HPP
#define BEAMSCOPE_DATASET_HPP

#include "beamscope/profile.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace beamscope
{
    struct MeasurementRecord
    {
        double alpha_deg = 0.0;
        double beta_deg = 0.0;
        double distance_ft = 0.0;
        MetricKind metric_kind = MetricKind::RsrpDbm;
        double value = 0.0;
        bool operator==(const MeasurementRecord &) const = default;
    };

    struct Dataset
    {
        std::string profile_name;
        std::uint64_t seed = 0;
        std::vector<MeasurementRecord> records;

        bool empty() const noexcept { return records.empty(); }
        std::size_t size() const noexcept { return records.size(); }
        bool operator==(const Dataset &) const = default;
    };

    /// CSV layout:
    ///   # profile=<name> seed=<n>
    ///   alpha_deg,beta_deg,distance_ft,metric_kind,value
    ///   <one record per line>
    /// The comment line is optional on input (externally measured files); numbers use the
    /// shortest round-trip decimal form on output.
    void write_dataset(std::ostream &os, const Dataset &dataset);
    Dataset read_dataset(std::istream &is);

    void write_dataset(const std::filesystem::path &path, const Dataset &dataset);
    Dataset read_dataset(const std::filesystem::path &path);
}

#endif
