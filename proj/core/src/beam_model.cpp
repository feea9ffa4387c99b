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

#include "beamscope/errors.hpp"
#include "beamscope/text.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <set>
#include <utility>

namespace beamscope
{
    namespace
    {
        constexpr double deg2rad = std::numbers::pi / 180.0;
        constexpr const char *table_header = "beam_id,azimuth_deg,elevation_deg,baseband_weight";

        double sin_deg(double deg) { return std::sin(deg * deg2rad); }
    }

    void ArrayGeometry::validate() const
    {
        if (elements_x == 0 || elements_y == 0)
            throw InvalidGeometry("array must have at least one element per axis");
        if (!(spacing > 0.0) || !std::isfinite(spacing))
            throw InvalidGeometry("element spacing must be positive");
    }

    Codebook::Codebook(std::string name, ArrayGeometry geometry, std::vector<Beam> beams,
                       double azimuth_step_deg, double elevation_step_deg)
        : name_(std::move(name)), geometry_(geometry), beams_(std::move(beams)),
          azimuth_step_deg_(azimuth_step_deg), elevation_step_deg_(elevation_step_deg)
    {
        geometry_.validate();
        if (!(azimuth_step_deg_ > 0.0) || !(elevation_step_deg_ > 0.0))
            throw InvalidGeometry("codebook angular steps must be positive");
        if (beams_.empty())
            throw InvalidGeometry("codebook '" + name_ + "' has no beams");

        std::set<std::pair<double, double>> directions;
        for (std::size_t i = 0; i < beams_.size(); ++i)
        {
            const Beam &b = beams_[i];
            if (b.beam_id != static_cast<int>(i + 1))
                throw InvalidGeometry("beam ids must be contiguous from 1; found " + std::to_string(b.beam_id) +
                                      " at position " + std::to_string(i + 1));
            if (!(b.baseband_weight > 0.0) || !std::isfinite(b.baseband_weight))
                throw InvalidGeometry("beam " + std::to_string(b.beam_id) + " has a non-positive baseband weight");
            if (!directions.emplace(b.azimuth_deg, b.elevation_deg).second)
                throw InvalidGeometry("beam " + std::to_string(b.beam_id) + " duplicates another beam's direction");
        }
    }

    bool Codebook::contains(int beam_id) const noexcept
    {
        return beam_id >= 1 && static_cast<std::size_t>(beam_id) <= beams_.size();
    }

    const Beam &Codebook::beam(int beam_id) const
    {
        if (!contains(beam_id))
            throw UnknownBeam(beam_id);
        return beams_[static_cast<std::size_t>(beam_id - 1)];
    }

    Codebook Codebook::with_weights(const std::vector<Beam> &overrides) const
    {
        std::vector<Beam> beams = beams_;
        for (const Beam &o : overrides)
        {
            if (!contains(o.beam_id))
                throw UnknownBeam(o.beam_id);
            Beam &b = beams[static_cast<std::size_t>(o.beam_id - 1)];
            if (std::abs(b.azimuth_deg - o.azimuth_deg) > 1e-6 || std::abs(b.elevation_deg - o.elevation_deg) > 1e-6)
                throw InvalidGeometry("weight override for beam " + std::to_string(o.beam_id) +
                                      " does not match the codebook direction");
            b.baseband_weight = o.baseband_weight;
        }
        return Codebook(name_, geometry_, std::move(beams), azimuth_step_deg_, elevation_step_deg_);
    }

    double fejer_kernel(std::size_t m, double delta_rad) noexcept
    {
        const double md = static_cast<double>(m);
        if (m <= 1)
            return md;

        const double half = 0.5 * delta_rad;
        const double den = std::sin(half);
        if (den == 0.0)
            return md;

        // m * half carries the rounding term `err` so the numerator stays accurate near nulls.
        const double arg = md * half;
        const double err = std::fma(md, half, -arg);
        const double num = std::sin(arg) + err * std::cos(arg);

        const double ratio = num / den;
        return std::clamp(ratio * ratio / md, 0.0, md);
    }

    double beam_gain(const Codebook &codebook, int beam_id, double obs_azimuth_deg, double obs_elevation_deg)
    {
        const Beam &b = codebook.beam(beam_id);
        const ArrayGeometry &g = codebook.geometry();
        const double k = 2.0 * std::numbers::pi * g.spacing;
        const double psi_az = k * (sin_deg(obs_azimuth_deg) - sin_deg(b.azimuth_deg));
        const double psi_el = k * (sin_deg(obs_elevation_deg) - sin_deg(b.elevation_deg));
        return fejer_kernel(g.elements_x, psi_az) * fejer_kernel(g.elements_y, psi_el);
    }

    double beam_gain_at_offset(const Codebook &codebook, int beam_id, double offset_azimuth_deg,
                               double offset_elevation_deg)
    {
        codebook.beam(beam_id);
        const ArrayGeometry &g = codebook.geometry();
        const double k = 2.0 * std::numbers::pi * g.spacing;
        return fejer_kernel(g.elements_x, k * sin_deg(offset_azimuth_deg)) *
               fejer_kernel(g.elements_y, k * sin_deg(offset_elevation_deg));
    }

    Codebook make_interdigital_codebook(double spacing)
    {
        constexpr int cols = 9;
        constexpr int rows = 7;
        constexpr double az_step = 90.0 / (cols - 1); // 11.25
        constexpr double el_step = 70.0 / (rows - 1); // 11.67 (rounded)

        std::vector<Beam> beams;
        beams.reserve(cols * rows);
        for (int row = 0; row < rows; ++row)
            for (int col = 0; col < cols; ++col)
            {
                // Centre row/column are exactly zero.
                const double az = (col - cols / 2) * az_step;
                const double el = (row - rows / 2) * el_step;
                beams.push_back({row * cols + col + 1, az, el, 1.0});
            }
        return Codebook("interdigital", {8, 8, spacing}, std::move(beams), az_step, el_step);
    }

    Codebook make_ni_codebook(double spacing)
    {
        std::vector<Beam> beams;
        beams.reserve(25);
        for (int i = 0; i < 25; ++i)
            beams.push_back({i + 1, 5.0 * (i - 12), 0.0, 1.0});
        // Linear array has no elevation steering; the step is nominal.
        return Codebook("ni", {8, 1, spacing}, std::move(beams), 5.0, 1.0);
    }

    void write_codebook_table(std::ostream &os, const Codebook &codebook)
    {
        os << table_header << '\n';
        for (const Beam &b : codebook.beams())
            os << b.beam_id << ',' << text::format_shortest(b.azimuth_deg) << ','
               << text::format_shortest(b.elevation_deg) << ',' << text::format_shortest(b.baseband_weight) << '\n';
    }

    std::vector<Beam> read_codebook_table(std::istream &is)
    {
        std::vector<Beam> out;
        std::string line;
        std::size_t lineno = 0;
        bool have_header = false;
        while (std::getline(is, line))
        {
            ++lineno;
            auto t = text::trim(line);
            if (t.empty() || t.front() == '#')
                continue;
            if (!have_header)
            {
                if (t != table_header)
                    throw SchemaError(std::string("expected header '") + table_header + "'", lineno);
                have_header = true;
                continue;
            }
            auto cols = text::split(t, ',');
            if (cols.size() != 4)
                throw SchemaError("expected 4 columns, found " + std::to_string(cols.size()), lineno);
            auto id = text::parse_int(cols[0]);
            auto az = text::parse_double(cols[1]);
            auto el = text::parse_double(cols[2]);
            auto w = text::parse_double(cols[3]);
            if (!id || !az || !el || !w)
                throw SchemaError("non-numeric field", lineno);
            if (!(*w > 0.0))
                throw SchemaError("baseband_weight must be positive", lineno);
            out.push_back({static_cast<int>(*id), *az, *el, *w});
        }
        if (!have_header)
            throw SchemaError("missing codebook header", 0);
        return out;
    }
}
