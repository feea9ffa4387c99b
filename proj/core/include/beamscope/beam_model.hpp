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

#ifndef BEAMSCOPE_BEAM_MODEL_HPP
#define BEAMSCOPE_BEAM_MODEL_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace beamscope
{
    /// Uniform rectangular (or linear, `elements_y == 1`) antenna array.
    struct ArrayGeometry
    {
        std::size_t elements_x = 1;
        std::size_t elements_y = 1;
        double spacing = 0.5; ///< element spacing in wavelengths

        std::size_t element_count() const noexcept { return elements_x * elements_y; }
        void validate() const;
        bool operator==(const ArrayGeometry &) const = default;
    };

    struct Beam
    {
        int beam_id = 0;
        double azimuth_deg = 0.0;
        double elevation_deg = 0.0;
        double baseband_weight = 1.0; ///< amplitude weight W_BB; steering phase follows from the boresight
        bool operator==(const Beam &) const = default;
    };

    /// Indexed beam set of one transceiver. Ids are contiguous from 1 and `beams[i].beam_id == i + 1`.
    class Codebook
    {
    public:
        Codebook(std::string name, ArrayGeometry geometry, std::vector<Beam> beams,
                 double azimuth_step_deg, double elevation_step_deg);

        const std::string &name() const noexcept { return name_; }
        const ArrayGeometry &geometry() const noexcept { return geometry_; }
        const std::vector<Beam> &beams() const noexcept { return beams_; }
        std::size_t size() const noexcept { return beams_.size(); }
        double azimuth_step_deg() const noexcept { return azimuth_step_deg_; }
        double elevation_step_deg() const noexcept { return elevation_step_deg_; }

        bool contains(int beam_id) const noexcept;
        const Beam &beam(int beam_id) const; // throws UnknownBeam

        /// Copy with the baseband weights of the listed beams replaced.
        Codebook with_weights(const std::vector<Beam> &overrides) const;

        bool operator==(const Codebook &) const = default;

    private:
        std::string name_;
        ArrayGeometry geometry_;
        std::vector<Beam> beams_;
        double azimuth_step_deg_;
        double elevation_step_deg_;
    };

    /// Fejer kernel F_M(x) = (1/M) (sin(Mx/2) / sin(x/2))^2, the power pattern of M
    /// in-phase unit elements at phase progression x. F_M(0) = M.
    double fejer_kernel(std::size_t m, double delta_rad) noexcept;

    /// Linear power gain of a beam toward an observation direction. Separable per-axis
    /// Fejer kernels over the sin-space phase difference 2*pi*spacing*(sin(obs) - sin(boresight)).
    double beam_gain(const Codebook &codebook, int beam_id, double obs_azimuth_deg, double obs_elevation_deg);

    /// Gain seen by a receiver displaced by an angular offset from the beam boresight,
    /// evaluated in the beam's own frame (boresight rotated onto the array normal).
    /// Depends only on the offset, so +offset and -offset give the same gain.
    double beam_gain_at_offset(const Codebook &codebook, int beam_id, double offset_azimuth_deg,
                               double offset_elevation_deg);

    /// 63 beams on a 9 x 7 (azimuth x elevation) grid, +-45 deg / +-35 deg, 8 x 8 array.
    /// id = row * 9 + col + 1 with row 0 at -35 deg elevation and col 0 at -45 deg azimuth.
    Codebook make_interdigital_codebook(double spacing = 0.5);

    /// 25 azimuth-only beams from -60 to +60 deg in 5 deg steps, 8-element linear array.
    Codebook make_ni_codebook(double spacing = 0.5);

    // Text table: header `beam_id,azimuth_deg,elevation_deg,baseband_weight`, one row per beam.
    void write_codebook_table(std::ostream &os, const Codebook &codebook);
    std::vector<Beam> read_codebook_table(std::istream &is);
}

#endif
