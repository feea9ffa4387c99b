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

#include "beamscope/learner/model_io.hpp"

#include "beamscope/errors.hpp"
#include "beamscope/text.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace beamscope::learn
{
    namespace
    {
        constexpr std::string_view magic = "beamscope-model";

        template <typename... Ts>
        struct overloaded : Ts...
        {
            using Ts::operator()...;
        };
        template <typename... Ts>
        overloaded(Ts...) -> overloaded<Ts...>;

        void put_row(std::ostream &os, const double *v, std::size_t n)
        {
            for (std::size_t i = 0; i < n; ++i)
                os << (i ? " " : "") << text::format_sig17(v[i]);
            os << '\n';
        }

        void put_tree(std::ostream &os, const RegressionTree &t)
        {
            os << "tree " << t.nodes.size() << '\n';
            for (const auto &n : t.nodes)
                os << n.feature << ' ' << text::format_sig17(n.threshold) << ' ' << n.left << ' ' << n.right << ' '
                   << text::format_sig17(n.value) << '\n';
        }

        /// Line-oriented tokenizer that keeps the line number for diagnostics.
        class Reader
        {
        public:
            explicit Reader(std::istream &is) : is_(is) {}

            std::vector<std::string_view> line(std::size_t expect_min = 1)
            {
                while (std::getline(is_, buf_))
                {
                    ++lineno_;
                    auto t = text::trim(buf_);
                    if (t.empty() || t.front() == '#')
                        continue;
                    tokens_.clear();
                    for (auto tok : text::split(t, ' '))
                        if (!tok.empty())
                            tokens_.push_back(tok);
                    if (tokens_.size() < expect_min)
                        fail("expected at least " + std::to_string(expect_min) + " fields");
                    return tokens_;
                }
                fail("unexpected end of model file");
            }

            std::vector<std::string_view> keyed(std::string_view key, std::size_t n_values)
            {
                auto t = line(1);
                if (t[0] != key)
                    fail("expected '" + std::string(key) + "'");
                if (t.size() != n_values + 1)
                    fail("'" + std::string(key) + "' expects " + std::to_string(n_values) + " values");
                return {t.begin() + 1, t.end()};
            }

            double num(std::string_view s)
            {
                auto v = text::parse_double(s);
                if (!v)
                    fail("malformed number '" + std::string(s) + "'");
                return *v;
            }

            std::size_t count(std::string_view s)
            {
                auto v = text::parse_uint(s);
                if (!v || *v > 100'000'000)
                    fail("malformed count '" + std::string(s) + "'");
                return static_cast<std::size_t>(*v);
            }

            int integer(std::string_view s)
            {
                auto v = text::parse_int(s);
                if (!v)
                    fail("malformed integer '" + std::string(s) + "'");
                return static_cast<int>(*v);
            }

            void row(double *out, std::size_t n)
            {
                auto t = line(1);
                if (t.size() != n)
                    fail("expected " + std::to_string(n) + " values, found " + std::to_string(t.size()));
                for (std::size_t i = 0; i < n; ++i)
                    out[i] = num(t[i]);
            }

            [[noreturn]] void fail(const std::string &what) const { throw SchemaError(what, lineno_); }
            std::size_t lineno() const noexcept { return lineno_; }

        private:
            std::istream &is_;
            std::string buf_;
            std::vector<std::string_view> tokens_;
            std::size_t lineno_ = 0;
        };

        RegressionTree get_tree(Reader &r)
        {
            auto hdr = r.keyed("tree", 1);
            const std::size_t n = r.count(hdr[0]);
            if (n == 0)
                r.fail("tree has no nodes");
            RegressionTree t;
            t.nodes.resize(n);
            for (std::size_t i = 0; i < n; ++i)
            {
                auto f = r.line(5);
                if (f.size() != 5)
                    r.fail("tree node expects 5 fields");
                TreeNode &node = t.nodes[i];
                node.feature = r.integer(f[0]);
                node.threshold = r.num(f[1]);
                node.left = r.integer(f[2]);
                node.right = r.integer(f[3]);
                node.value = r.num(f[4]);
                const int ni = static_cast<int>(n);
                const int self = static_cast<int>(i);
                if (node.feature >= static_cast<int>(feature_count) || node.feature < -1)
                    r.fail("tree node has an invalid feature index");
                // Children always follow their parent, so traversal terminates.
                if (node.feature >= 0 && (node.left <= self || node.right <= self || node.left >= ni || node.right >= ni ||
                                            node.left == node.right))
                    r.fail("tree node has invalid children");
            }
            return t;
        }
    }

    std::string_view model_kind(const Model &m) noexcept
    {
        return std::visit(overloaded{[](const MlpModel &) { return std::string_view("mlp"); },
                                     [](const LinearModel &) { return std::string_view("linreg"); },
                                     [](const RegressionTree &) { return std::string_view("tree"); },
                                     [](const Forest &) { return std::string_view("forest"); },
                                     [](const GradientBoosting &) { return std::string_view("gbrt"); }},
                          m);
    }

    double predict(const Model &m, const Features &x)
    {
        return std::visit([&](const auto &model) { return model.predict(x); }, m);
    }

    void store_model(std::ostream &os, const Model &m)
    {
        os << magic << ' ' << model_format_version << '\n' << "kind " << model_kind(m) << '\n';
        std::visit(overloaded{
                       [&](const MlpModel &mm) {
                           os << "input_mean ";
                           put_row(os, mm.input_scaler.mean.data(), feature_count);
                           os << "input_std ";
                           put_row(os, mm.input_scaler.stddev.data(), feature_count);
                           os << "target " << text::format_sig17(mm.target_scaler.mean) << ' '
                              << text::format_sig17(mm.target_scaler.stddev) << '\n';
                           os << "layers " << mm.net.layers.size() << '\n';
                           for (const auto &l : mm.net.layers)
                           {
                               os << "layer " << l.out << ' ' << l.in << ' ' << to_string(l.activation) << '\n';
                               for (std::size_t r = 0; r < l.out; ++r)
                                   put_row(os, l.weights.data() + r * l.in, l.in);
                               put_row(os, l.biases.data(), l.out);
                           }
                       },
                       [&](const LinearModel &lm) {
                           os << "coefficients " << text::format_sig17(lm.intercept);
                           for (double c : lm.coefficients)
                               os << ' ' << text::format_sig17(c);
                           os << '\n';
                       },
                       [&](const RegressionTree &t) { put_tree(os, t); },
                       [&](const Forest &f) {
                           os << "trees " << f.trees.size() << '\n';
                           for (const auto &t : f.trees)
                               put_tree(os, t);
                       },
                       [&](const GradientBoosting &g) {
                           os << "boost " << text::format_sig17(g.init) << ' ' << text::format_sig17(g.learning_rate)
                              << ' ' << g.stages.size() << '\n';
                           for (const auto &t : g.stages)
                               put_tree(os, t);
                       }},
                   m);
    }

    Model load_model(std::istream &is)
    {
        Reader r(is);
        std::vector<std::string_view> head;
        try
        {
            head = r.line(1);
        }
        catch (const SchemaError &)
        {
            throw VersionMismatch("empty model file", 0);
        }
        if (head[0] != magic || head.size() != 2)
            throw VersionMismatch("not a beamscope model file", r.lineno());
        if (head[1] != std::to_string(model_format_version))
            throw VersionMismatch("unsupported model format version '" + std::string(head[1]) + "' (expected " +
                                      std::to_string(model_format_version) + ")",
                                  r.lineno());

        const std::string kind(r.keyed("kind", 1)[0]);
        if (kind == "mlp")
        {
            MlpModel mm;
            auto row = r.keyed("input_mean", feature_count);
            for (std::size_t f = 0; f < feature_count; ++f)
                mm.input_scaler.mean[f] = r.num(row[f]);
            row = r.keyed("input_std", feature_count);
            for (std::size_t f = 0; f < feature_count; ++f)
                mm.input_scaler.stddev[f] = r.num(row[f]);
            row = r.keyed("target", 2);
            mm.target_scaler.mean = r.num(row[0]);
            mm.target_scaler.stddev = r.num(row[1]);
            const std::size_t n_layers = r.count(r.keyed("layers", 1)[0]);
            for (std::size_t i = 0; i < n_layers; ++i)
            {
                auto lh = r.keyed("layer", 3);
                DenseLayer l;
                l.out = r.count(lh[0]);
                l.in = r.count(lh[1]);
                auto act = parse_activation(lh[2]);
                if (!act)
                    r.fail("unknown activation '" + std::string(lh[2]) + "'");
                l.activation = *act;
                if (l.in == 0 || l.out == 0 || l.in * l.out > 10'000'000)
                    r.fail("layer dimensions out of range");
                l.weights.resize(l.in * l.out);
                for (std::size_t rr = 0; rr < l.out; ++rr)
                    r.row(l.weights.data() + rr * l.in, l.in);
                l.biases.resize(l.out);
                r.row(l.biases.data(), l.out);
                mm.net.layers.push_back(std::move(l));
            }
            try
            {
                mm.net.validate();
            }
            catch (const InvalidArchitecture &e)
            {
                r.fail(e.what());
            }
            for (double s : mm.input_scaler.stddev)
                if (!(s > 0.0))
                    r.fail("input scale must be positive");
            if (!(mm.target_scaler.stddev > 0.0))
                r.fail("target scale must be positive");
            return mm;
        }
        if (kind == "linreg")
        {
            auto row = r.keyed("coefficients", feature_count + 1);
            LinearModel lm;
            lm.intercept = r.num(row[0]);
            for (std::size_t f = 0; f < feature_count; ++f)
                lm.coefficients[f] = r.num(row[f + 1]);
            return lm;
        }
        if (kind == "tree")
            return get_tree(r);
        if (kind == "forest")
        {
            const std::size_t n = r.count(r.keyed("trees", 1)[0]);
            if (n == 0)
                r.fail("forest has no trees");
            Forest f;
            for (std::size_t i = 0; i < n; ++i)
                f.trees.push_back(get_tree(r));
            return f;
        }
        if (kind == "gbrt")
        {
            auto row = r.keyed("boost", 3);
            GradientBoosting g;
            g.init = r.num(row[0]);
            g.learning_rate = r.num(row[1]);
            const std::size_t n = r.count(row[2]);
            for (std::size_t i = 0; i < n; ++i)
                g.stages.push_back(get_tree(r));
            return g;
        }
        r.fail("unknown model kind '" + kind + "'");
    }

    void store_model(const std::filesystem::path &path, const Model &m)
    {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f)
            throw IoError("cannot open '" + path.string() + "' for writing");
        store_model(f, m);
        f.flush();
        if (!f)
            throw IoError("write to '" + path.string() + "' failed");
    }

    Model load_model(const std::filesystem::path &path)
    {
        std::ifstream f(path, std::ios::binary);
        if (!f)
            throw IoError("cannot open '" + path.string() + "'");
        return load_model(f);
    }
}
