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

#ifndef BEAMSCOPE_TOOLS_CLI_HPP
#define BEAMSCOPE_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace beamscope::cli
{
    enum ExitCode : int
    {
        Ok = 0,
        Usage = 2, ///< bad flags, unknown profile or beam
        Io = 3,
        Parse = 4, ///< schema, model version, malformed input files
        Numeric = 5,
    };

    /// Entry point of the `beamscope` tool with explicit output streams.
    int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
}

#endif
