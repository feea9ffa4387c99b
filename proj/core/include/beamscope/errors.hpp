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

#ifndef BEAMSCOPE_ERRORS_HPP
#define BEAMSCOPE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace beamscope
{
    /// Root of every error the library throws.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Geometry and channel
    class UnknownBeam : public Error
    {
    public:
        explicit UnknownBeam(int beam_id)
            : Error("unknown beam id " + std::to_string(beam_id)), beam_id_(beam_id) {}
        int beam_id() const noexcept { return beam_id_; }

    private:
        int beam_id_;
    };

    class InvalidDistance : public Error
    {
    public:
        using Error::Error;
    };

    class InvalidGeometry : public Error
    {
    public:
        using Error::Error;
    };

    // Profiles and datasets
    class InvalidProfile : public Error
    {
    public:
        using Error::Error;
    };

    class UnknownProfile : public Error
    {
    public:
        using Error::Error;
    };

    class IoError : public Error
    {
    public:
        using Error::Error;
    };

    /// Malformed file content. `line()` is 1-based, 0 when no line applies.
    class SchemaError : public Error
    {
    public:
        SchemaError(const std::string &what, std::size_t line)
            : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
        std::size_t line() const noexcept { return line_; }

    private:
        std::size_t line_;
    };

    class VersionMismatch : public SchemaError
    {
    public:
        using SchemaError::SchemaError;
    };

    // Learning
    class EmptyDataset : public Error
    {
    public:
        using Error::Error;
    };

    class InvalidArchitecture : public Error
    {
    public:
        using Error::Error;
    };

    class ShapeMismatch : public Error
    {
    public:
        using Error::Error;
    };

    class NonFiniteLoss : public Error
    {
    public:
        using Error::Error;
    };

    class LengthMismatch : public Error
    {
    public:
        using Error::Error;
    };

    class ZeroVariance : public Error
    {
    public:
        using Error::Error;
    };

    class SingularDesign : public Error
    {
    public:
        using Error::Error;
    };

    class InvalidHyperparameter : public Error
    {
    public:
        using Error::Error;
    };
}

#endif
