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

#include "beamscope/plot.hpp"

#include "beamscope/errors.hpp"
#include "beamscope/text.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <string>

namespace beamscope::plot
{
    namespace
    {
        using text::format_fixed;

        std::string f2(double v) { return format_fixed(v, 2); }

        struct Rgb
        {
            double r, g, b;
        };

        // Viridis anchor colours, linearly interpolated.
        constexpr std::array<Rgb, 5> viridis{{{68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};

        std::string colour(double t)
        {
            t = std::clamp(t, 0.0, 1.0) * (viridis.size() - 1);
            const auto i = std::min<std::size_t>(static_cast<std::size_t>(t), viridis.size() - 2);
            const double u = t - static_cast<double>(i);
            auto mix = [&](double a, double b) { return static_cast<int>(std::lround(a + (b - a) * u)); };
            char buf[8];
            std::snprintf(buf, sizeof buf, "#%02x%02x%02x", mix(viridis[i].r, viridis[i + 1].r),
                          mix(viridis[i].g, viridis[i + 1].g), mix(viridis[i].b, viridis[i + 1].b));
            return buf;
        }

        std::string line_colour(std::size_t i)
        {
            static constexpr std::array<const char *, 8> palette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                                 "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
            return palette[i % palette.size()];
        }

        std::string escape(std::string_view s)
        {
            std::string out;
            for (char c : s)
            {
                switch (c)
                {
                case '&': out += "&amp;"; break;
                case '<': out += "&lt;"; break;
                case '>': out += "&gt;"; break;
                case '"': out += "&quot;"; break;
                default: out += c;
                }
            }
            return out;
        }

        void svg_open(std::ostream &os, int w, int h)
        {
            os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
               << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
               << "\" viewBox=\"0 0 " << w << ' ' << h << "\" font-family=\"sans-serif\">\n"
               << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
        }

        void label(std::ostream &os, double x, double y, std::string_view s, int size = 12,
                   std::string_view anchor = "middle", double rotate = 0.0)
        {
            os << "<text x=\"" << f2(x) << "\" y=\"" << f2(y) << "\" font-size=\"" << size << "\" text-anchor=\""
               << anchor << '"';
            if (rotate != 0.0)
                os << " transform=\"rotate(" << f2(rotate) << ' ' << f2(x) << ' ' << f2(y) << ")\"";
            os << '>' << escape(s) << "</text>\n";
        }

        MetricKind kind_of(const Dataset &ds) { return ds.records.front().metric_kind; }

        std::string value_axis(const Dataset &ds)
        {
            const MetricKind k = kind_of(ds);
            return std::string(k == MetricKind::RsrpDbm ? "RSRP" : "data rate") + " (" + std::string(metric_unit(k)) + ")";
        }

        void require(const Dataset &ds)
        {
            if (ds.empty())
                throw EmptyDataset("cannot plot an empty dataset");
        }
    }

    HeatmapLayout heatmap_layout(const Dataset &ds)
    {
        require(ds);
        HeatmapLayout h;
        std::set<double> alphas;
        std::set<std::pair<double, double>> spots;
        for (const auto &r : ds.records)
        {
            alphas.insert(r.alpha_deg);
            spots.emplace(r.beta_deg, r.distance_ft);
        }
        h.alphas.assign(alphas.begin(), alphas.end());
        h.spots.assign(spots.begin(), spots.end());

        std::map<double, std::size_t> col;
        for (std::size_t i = 0; i < h.alphas.size(); ++i)
            col[h.alphas[i]] = i;
        std::map<std::pair<double, double>, std::size_t> row;
        for (std::size_t i = 0; i < h.spots.size(); ++i)
            row[h.spots[i]] = i;

        // Repeated measurements of one cell are averaged.
        std::vector<double> sum(h.alphas.size() * h.spots.size(), 0.0);
        std::vector<std::size_t> cnt(sum.size(), 0);
        for (const auto &r : ds.records)
        {
            const std::size_t k = row[{r.beta_deg, r.distance_ft}] * h.alphas.size() + col[r.alpha_deg];
            sum[k] += r.value;
            ++cnt[k];
        }
        h.cells.resize(sum.size());
        h.min_value = INFINITY;
        h.max_value = -INFINITY;
        for (std::size_t k = 0; k < sum.size(); ++k)
            if (cnt[k])
            {
                const double v = sum[k] / static_cast<double>(cnt[k]);
                h.cells[k] = v;
                h.min_value = std::min(h.min_value, v);
                h.max_value = std::max(h.max_value, v);
            }
        return h;
    }

    std::vector<double> default_profile_alphas(const Dataset &ds)
    {
        require(ds);
        std::set<double> s;
        for (const auto &r : ds.records)
            s.insert(r.alpha_deg);
        std::vector<double> a(s.begin(), s.end());
        if (a.size() <= 3)
            return a;
        return {a.front(), a[a.size() / 2], a.back()};
    }

    std::vector<BetaProfile> beta_profiles(const Dataset &ds, const std::vector<double> &alphas,
                                           std::optional<double> distance_ft)
    {
        require(ds);
        std::vector<BetaProfile> out;
        for (double alpha : alphas)
        {
            std::map<double, std::pair<double, std::size_t>> acc;
            for (const auto &r : ds.records)
            {
                if (std::abs(r.alpha_deg - alpha) > 1e-9)
                    continue;
                if (distance_ft && std::abs(r.distance_ft - *distance_ft) > 1e-9)
                    continue;
                auto &[s, n] = acc[r.beta_deg];
                s += r.value;
                ++n;
            }
            BetaProfile p;
            p.alpha_deg = alpha;
            for (const auto &[beta, sn] : acc)
            {
                p.betas.push_back(beta);
                p.values.push_back(sn.first / static_cast<double>(sn.second));
            }
            out.push_back(std::move(p));
        }
        return out;
    }

    void write_heatmap_svg(std::ostream &os, const Dataset &ds)
    {
        const HeatmapLayout h = heatmap_layout(ds);
        const int cell_w = 24, cell_h = 8;
        const int left = 110, top = 50, bar_w = 18;
        const int grid_w = cell_w * static_cast<int>(h.alphas.size());
        const int grid_h = cell_h * static_cast<int>(h.spots.size());
        const int width = left + grid_w + 110;
        const int height = top + grid_h + 70;
        const double span = h.max_value - h.min_value;

        svg_open(os, width, height);
        label(os, width / 2.0, 24, "Profile '" + ds.profile_name + "': " + value_axis(ds) + " by beam and spot", 14);

        os << "<g id=\"cells\">\n";
        for (std::size_t r = 0; r < h.spots.size(); ++r)
            for (std::size_t c = 0; c < h.alphas.size(); ++c)
            {
                const auto &v = h.cells[r * h.alphas.size() + c];
                const std::string fill = v ? colour(span > 0 ? (*v - h.min_value) / span : 0.5) : "#cccccc";
                os << "<rect x=\"" << left + static_cast<int>(c) * cell_w << "\" y=\"" << top + static_cast<int>(r) * cell_h
                   << "\" width=\"" << cell_w << "\" height=\"" << cell_h << "\" fill=\"" << fill << "\"/>\n";
            }
        os << "</g>\n";

        // Column labels: alpha.
        const std::size_t col_step = std::max<std::size_t>(1, h.alphas.size() / 13);
        for (std::size_t c = 0; c < h.alphas.size(); c += col_step)
            label(os, left + (static_cast<double>(c) + 0.5) * cell_w, top + grid_h + 16, format_fixed(h.alphas[c], 1),
                  9);
        label(os, left + grid_w / 2.0, top + grid_h + 40, "beam direction alpha (deg)");

        // Row labels: first spot of every beta line.
        for (std::size_t r = 0; r < h.spots.size(); ++r)
            if (r == 0 || h.spots[r].first != h.spots[r - 1].first)
                label(os, left - 6, top + (static_cast<double>(r) + 0.8) * cell_h,
                      "b=" + format_fixed(h.spots[r].first, 0) + " d=" + format_fixed(h.spots[r].second, 0), 8, "end");
        label(os, 16, top + grid_h / 2.0, "spot index (beta-major, distance ft)", 11, "middle", -90.0);

        // Colour bar with units.
        const int bx = left + grid_w + 24;
        const int steps = 32;
        for (int i = 0; i < steps; ++i)
        {
            const double t = 1.0 - (i + 0.5) / steps;
            os << "<rect x=\"" << bx << "\" y=\"" << f2(top + i * grid_h / static_cast<double>(steps))
               << "\" width=\"" << bar_w << "\" height=\"" << f2(grid_h / static_cast<double>(steps) + 0.5)
               << "\" fill=\"" << colour(t) << "\"/>\n";
        }
        label(os, bx + bar_w + 4, top + 8, format_fixed(h.max_value, 2), 10, "start");
        label(os, bx + bar_w + 4, top + grid_h, format_fixed(h.min_value, 2), 10, "start");
        label(os, bx + bar_w + 4, top + grid_h + 16, std::string(metric_unit(kind_of(ds))), 10, "start");
        os << "</svg>\n";
    }

    void write_beta_profile_svg(std::ostream &os, const Dataset &ds, const std::vector<double> &alphas,
                                std::optional<double> distance_ft)
    {
        const auto curves = beta_profiles(ds, alphas, distance_ft);
        double bmin = INFINITY, bmax = -INFINITY, vmin = INFINITY, vmax = -INFINITY;
        for (const auto &c : curves)
            for (std::size_t i = 0; i < c.betas.size(); ++i)
            {
                bmin = std::min(bmin, c.betas[i]);
                bmax = std::max(bmax, c.betas[i]);
                vmin = std::min(vmin, c.values[i]);
                vmax = std::max(vmax, c.values[i]);
            }
        if (!std::isfinite(bmin))
            throw EmptyDataset("no records match the selected beams");
        if (bmax == bmin)
            bmin -= 1.0, bmax += 1.0;
        if (vmax == vmin)
            vmin -= 1.0, vmax += 1.0;

        const int width = 640, height = 420, left = 70, right = 150, top = 50, bottom = 60;
        const double pw = width - left - right, ph = height - top - bottom;
        auto px = [&](double b) { return left + (b - bmin) / (bmax - bmin) * pw; };
        auto py = [&](double v) { return top + (1.0 - (v - vmin) / (vmax - vmin)) * ph; };

        svg_open(os, width, height);
        std::string title = "Beam profile over spot angle, profile '" + ds.profile_name + "'";
        if (distance_ft)
            title += " at d=" + text::format_shortest(*distance_ft) + " ft";
        label(os, width / 2.0, 24, title, 14);

        os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << f2(pw) << "\" height=\"" << f2(ph)
           << "\" fill=\"none\" stroke=\"#333333\"/>\n";
        for (int i = 0; i <= 4; ++i)
        {
            const double v = vmin + (vmax - vmin) * i / 4.0;
            os << "<line x1=\"" << left << "\" y1=\"" << f2(py(v)) << "\" x2=\"" << f2(left + pw) << "\" y2=\""
               << f2(py(v)) << "\" stroke=\"#dddddd\"/>\n";
            label(os, left - 6, py(v) + 4, format_fixed(v, 2), 10, "end");
        }
        std::set<double> ticks;
        for (const auto &c : curves)
            ticks.insert(c.betas.begin(), c.betas.end());
        for (double b : ticks)
            label(os, px(b), top + ph + 16, format_fixed(b, 0), 10);
        label(os, left + pw / 2.0, height - 18, "spot angle beta (deg)");
        label(os, 18, top + ph / 2.0, value_axis(ds), 12, "middle", -90.0);

        for (std::size_t k = 0; k < curves.size(); ++k)
        {
            const auto &c = curves[k];
            if (c.betas.empty())
                continue;
            os << "<polyline fill=\"none\" stroke=\"" << line_colour(k) << "\" stroke-width=\"2\" points=\"";
            for (std::size_t i = 0; i < c.betas.size(); ++i)
                os << (i ? " " : "") << f2(px(c.betas[i])) << ',' << f2(py(c.values[i]));
            os << "\"/>\n";
            for (std::size_t i = 0; i < c.betas.size(); ++i)
                os << "<circle cx=\"" << f2(px(c.betas[i])) << "\" cy=\"" << f2(py(c.values[i]))
                   << "\" r=\"3\" fill=\"" << line_colour(k) << "\"/>\n";
            const double ly = top + 14 + 18 * static_cast<double>(k);
            os << "<line x1=\"" << f2(left + pw + 12) << "\" y1=\"" << f2(ly - 4) << "\" x2=\"" << f2(left + pw + 32)
               << "\" y2=\"" << f2(ly - 4) << "\" stroke=\"" << line_colour(k) << "\" stroke-width=\"2\"/>\n";
            label(os, left + pw + 36, ly, "alpha=" + format_fixed(c.alpha_deg, 2), 11, "start");
        }
        os << "</svg>\n";
    }
}
