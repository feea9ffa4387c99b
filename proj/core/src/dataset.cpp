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

#include "beamscope/dataset.hpp"

#include "beamscope/errors.hpp"
#include "beamscope/text.hpp"

#include <fstream>
#include <istream>
#include <ostream>

namespace beamscope
{
    namespace
    {
        constexpr std::string_view dataset_header = "alpha_deg,beta_deg,distance_ft,metric_kind,value";

        // "# profile=<name> seed=<n>"; anything else after '#' is an ordinary comment.
        bool parse_meta(std::string_view t, Dataset &ds, std::size_t lineno)
        {
            t.remove_prefix(1);
            t = text::trim(t);
            if (!t.starts_with("profile="))
                return false;
            auto fields = text::split(t, ' ');
            bool seen_seed = false;
            for (auto f : fields)
            {
                if (f.empty())
                    continue;
                if (f.starts_with("profile="))
                    ds.profile_name = std::string(f.substr(8));
                else if (f.starts_with("seed="))
                {
                    auto s = text::parse_uint(f.substr(5));
                    if (!s)
                        throw SchemaError("malformed seed in metadata line", lineno);
                    ds.seed = *s;
                    seen_seed = true;
                }
                else
                    throw SchemaError("unknown metadata field '" + std::string(f) + "'", lineno);
            }
            if (!seen_seed)
                throw SchemaError("metadata line has no seed", lineno);
            return true;
        }
    }

    void write_dataset(std::ostream &os, const Dataset &ds)
    {
        using text::format_shortest;
        os << "# profile=" << ds.profile_name << " seed=" << ds.seed << '\n' << dataset_header << '\n';
        for (const auto &r : ds.records)
            os << format_shortest(r.alpha_deg) << ',' << format_shortest(r.beta_deg) << ','
               << format_shortest(r.distance_ft) << ',' << to_string(r.metric_kind) << ','
               << format_shortest(r.value) << '\n';
    }

    Dataset read_dataset(std::istream &is)
    {
        Dataset ds;
        std::string line;
        std::size_t lineno = 0;
        bool have_header = false;
        bool have_meta = false;
        while (std::getline(is, line))
        {
            ++lineno;
            auto t = text::trim(line);
            if (t.empty())
                continue;
            if (t.front() == '#')
            {
                if (!have_header && !have_meta && parse_meta(t, ds, lineno))
                    have_meta = true;
                continue;
            }
            if (!have_header)
            {
                if (t != dataset_header)
                    throw SchemaError("bad header, expected '" + std::string(dataset_header) + "'", lineno);
                have_header = true;
                continue;
            }

            auto cols = text::split(t, ',');
            if (cols.size() != 5)
                throw SchemaError("expected 5 columns, found " + std::to_string(cols.size()), lineno);
            auto alpha = text::parse_double(cols[0]);
            auto beta = text::parse_double(cols[1]);
            auto dist = text::parse_double(cols[2]);
            auto value = text::parse_double(cols[4]);
            if (!alpha || !beta || !dist || !value)
                throw SchemaError("non-numeric field", lineno);
            auto kind = parse_metric_kind(text::trim(cols[3]));
            if (!kind)
                throw SchemaError("unknown metric kind '" + std::string(text::trim(cols[3])) + "'", lineno);
            if (!ds.records.empty() && ds.records.front().metric_kind != *kind)
                throw SchemaError("mixed metric kinds in one dataset", lineno);
            ds.records.push_back({*alpha, *beta, *dist, *kind, *value});
        }
        if (!have_header)
            throw SchemaError("missing dataset header", lineno);
        return ds;
    }

    void write_dataset(const std::filesystem::path &path, const Dataset &dataset)
    {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f)
            throw IoError("cannot open '" + path.string() + "' for writing");
        write_dataset(f, dataset);
        f.flush();
        if (!f)
            throw IoError("write to '" + path.string() + "' failed");
    }

    Dataset read_dataset(const std::filesystem::path &path)
    {
        std::ifstream f(path, std::ios::binary);
        if (!f)
            throw IoError("cannot open '" + path.string() + "'");
        return read_dataset(f);
    }
}
