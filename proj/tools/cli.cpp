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

#include "cli.hpp"

#include "beamscope/errors.hpp"
#include "beamscope/learner/baselines.hpp"
#include "beamscope/learner/metrics.hpp"
#include "beamscope/learner/model_io.hpp"
#include "beamscope/learner/train.hpp"
#include "beamscope/plot.hpp"
#include "beamscope/profiler.hpp"
#include "beamscope/text.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>

namespace beamscope::cli
{
    namespace
    {
        using text::format_shortest;
        using text::format_sig17;

        struct Options
        {
            std::string profile;
            std::uint64_t seed = 42;
            std::string out;
            std::string data;
            std::string model;
            std::string widths = "32,16,8,4,2";
            std::size_t epochs = 200;
            std::size_t batch = 10;
            double split = 0.8;
            std::optional<double> lr;
            std::string optimizer = "adam";
            std::string baseline;
            std::size_t max_depth = 0;
            std::size_t n_estimators = 0;
            std::string loss_out;
            bool no_fading = false;
            unsigned workers = 1;
            int beam = 0;
            double alpha = 0.0;
            double beta = 0.0;
            double dist = 0.0;
            std::string alpha_list;
            std::string kind = "heatmap";
        };

        TestbedProfile profile_for(const Options &o)
        {
            TestbedProfile p = find_profile(o.profile);
            if (o.no_fading)
                p.channel.fading_enabled = false;
            return p;
        }

        void write_text_file(const std::string &path, const std::string &content)
        {
            std::ofstream f(path, std::ios::binary | std::ios::trunc);
            if (!f)
                throw IoError("cannot open '" + path + "' for writing");
            f << content;
            f.flush();
            if (!f)
                throw IoError("write to '" + path + "' failed");
        }

        learn::TrainConfig config_from(const Options &o)
        {
            learn::TrainConfig cfg;
            cfg.epochs = o.epochs;
            cfg.batch_size = o.batch;
            cfg.train_fraction = o.split;
            cfg.learning_rate = o.lr.value_or(1e-3);
            cfg.seed = o.seed;
            auto opt = learn::parse_optimizer(o.optimizer);
            if (!opt)
                throw InvalidHyperparameter("unknown optimizer '" + o.optimizer + "' (expected adam or sgd)");
            cfg.optimizer = *opt;
            auto widths = text::parse_count_list(o.widths);
            if (!widths || widths->empty())
                throw InvalidArchitecture("malformed --widths '" + o.widths + "'");
            cfg.hidden_widths = *widths;
            cfg.validate();
            return cfg;
        }

        struct EvalResult
        {
            std::size_t n = 0;
            double mse = 0.0;
            std::optional<double> r2;
        };

        EvalResult evaluate(const learn::Model &m, const Dataset &ds)
        {
            const auto s = learn::to_samples(ds);
            if (s.empty())
                throw EmptyDataset("no records to evaluate");
            std::vector<double> pred;
            pred.reserve(s.size());
            for (const auto &x : s.x)
                pred.push_back(learn::predict(m, x));
            EvalResult r;
            r.n = s.size();
            r.mse = learn::mse(pred, s.y);
            try
            {
                r.r2 = learn::r2(pred, s.y);
            }
            catch (const ZeroVariance &)
            {
            }
            return r;
        }

        std::string r2_text(const std::optional<double> &r2) { return r2 ? format_sig17(*r2) : "nan"; }

        int cmd_codebook(const Options &o, std::ostream &out)
        {
            const TestbedProfile p = profile_for(o);
            write_codebook_table(out, p.codebook);
            return Ok;
        }

        int cmd_map(const Options &o, std::ostream &out)
        {
            const TestbedProfile p = profile_for(o);
            const int beam = o.beam ? o.beam : p.alpha_sweep.front();
            const double alpha = p.codebook.beam(beam).azimuth_deg;
            const SpotGrid grid = build_virtual_map(p, alpha);
            out << "# profile=" << p.name << " beam=" << beam << " alpha_deg=" << format_shortest(alpha)
                << " spots=" << grid.spots.size() << '\n'
                << "beta_deg,distance_ft,rx_orientation_deg\n";
            for (const auto &s : grid.spots)
                out << format_shortest(s.beta_deg) << ',' << format_shortest(s.distance_ft) << ','
                    << format_shortest(s.rx_orientation_deg) << '\n';
            return Ok;
        }

        int cmd_generate(const Options &o, std::ostream &out)
        {
            const TestbedProfile p = profile_for(o);
            const Dataset ds = run_sweep(p, o.seed, o.workers);
            write_dataset(o.out, ds);
            out << ds.size() << " records\n";
            return Ok;
        }

        int cmd_train(const Options &o, std::ostream &out)
        {
            const Dataset ds = read_dataset(o.data);
            if (ds.empty())
                throw EmptyDataset("dataset '" + o.data + "' has no records");

            if (o.baseline.empty())
            {
                const learn::TrainConfig cfg = config_from(o);
                out << "epochs=" << cfg.epochs << " batch=" << cfg.batch_size
                    << " split=" << format_shortest(cfg.train_fraction) << " lr=" << format_shortest(cfg.learning_rate)
                    << " optimizer=" << learn::to_string(cfg.optimizer) << " seed=" << cfg.seed
                    << " widths=" << text::join_counts(cfg.hidden_widths) << '\n';
                const learn::TrainResult res = learn::train_on_dataset(ds, cfg);
                const auto &rep = res.report;
                out << "train_records=" << rep.train_indices.size() << " test_records=" << rep.test_indices.size()
                    << '\n'
                    << "final_loss=" << format_sig17(rep.loss_curve.back()) << '\n'
                    << "test_mse=" << format_sig17(rep.test_mse) << " test_r2=" << r2_text(rep.test_r2)
                    << " test_mse_normalized=" << format_sig17(rep.test_mse_normalized) << '\n';
                learn::store_model(o.out, learn::Model{res.model});
                if (!o.loss_out.empty())
                {
                    std::string csv = "epoch,loss\n";
                    for (std::size_t e = 0; e < rep.loss_curve.size(); ++e)
                        csv += std::to_string(e + 1) + ',' + format_sig17(rep.loss_curve[e]) + '\n';
                    write_text_file(o.loss_out, csv);
                }
                out << "model=" << o.out << '\n';
                return Ok;
            }

            if (!(o.split > 0.0 && o.split < 1.0))
                throw InvalidHyperparameter("--split must lie in (0, 1)");
            const auto split = learn::split_dataset(ds, o.split, o.seed);
            const auto train = learn::to_samples(split.train);
            learn::Model model;
            if (o.baseline == "linreg")
                model = learn::linreg_fit(train);
            else if (o.baseline == "tree")
                model = learn::tree_fit(train, o.max_depth ? o.max_depth : 8);
            else if (o.baseline == "forest")
                model = learn::forest_fit(train, o.n_estimators ? o.n_estimators : 100, o.max_depth ? o.max_depth : 8,
                                          o.seed);
            else if (o.baseline == "gbrt")
                model = learn::gbrt_fit(train, o.n_estimators ? o.n_estimators : 200, o.lr.value_or(0.1),
                                        o.max_depth ? o.max_depth : 3, o.seed)
                            .model;
            else
                throw InvalidHyperparameter("unknown baseline '" + o.baseline + "' (expected linreg, tree, forest, gbrt)");

            const EvalResult ev = evaluate(model, split.test);
            out << "baseline=" << o.baseline << " split=" << format_shortest(o.split) << " seed=" << o.seed << '\n'
                << "train_records=" << split.train.size() << " test_records=" << split.test.size() << '\n'
                << "test_mse=" << format_sig17(ev.mse) << " test_r2=" << r2_text(ev.r2) << '\n';
            learn::store_model(o.out, model);
            out << "model=" << o.out << '\n';
            return Ok;
        }

        int cmd_eval(const Options &o, std::ostream &out, bool split_given)
        {
            const learn::Model model = learn::load_model(o.model);
            Dataset ds = read_dataset(o.data);
            if (split_given)
                ds = learn::split_dataset(ds, o.split, o.seed).test;
            const EvalResult ev = evaluate(model, ds);
            out << "model=" << learn::model_kind(model) << " records=" << ev.n << '\n'
                << "mse=" << format_sig17(ev.mse) << " r2=" << r2_text(ev.r2) << '\n';
            return Ok;
        }

        int cmd_predict(const Options &o, std::ostream &out)
        {
            const learn::Model model = learn::load_model(o.model);
            out << format_sig17(learn::predict(model, {o.alpha, o.beta, o.dist})) << '\n';
            return Ok;
        }

        int cmd_plot(const Options &o, std::ostream &out, bool dist_given)
        {
            const Dataset ds = read_dataset(o.data);
            if (ds.empty())
                throw EmptyDataset("dataset '" + o.data + "' has no records");
            std::ostringstream svg;
            if (o.kind == "heatmap")
                plot::write_heatmap_svg(svg, ds);
            else if (o.kind == "profile")
            {
                std::vector<double> alphas;
                if (o.alpha_list.empty())
                    alphas = plot::default_profile_alphas(ds);
                else
                    for (auto part : text::split(o.alpha_list, ','))
                    {
                        auto v = text::parse_double(part);
                        if (!v)
                            throw InvalidHyperparameter("malformed --alpha list '" + o.alpha_list + "'");
                        alphas.push_back(*v);
                    }
                plot::write_beta_profile_svg(svg, ds, alphas, dist_given ? std::optional<double>(o.dist) : std::nullopt);
            }
            else
                throw InvalidHyperparameter("unknown plot kind '" + o.kind + "' (expected heatmap or profile)");
            write_text_file(o.out, svg.str());
            out << "plot=" << o.out << '\n';
            return Ok;
        }
    }

    int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"beamscope: mmWave beam profiling simulator and link-quality predictor", "beamscope"};
        app.require_subcommand(1);
        Options o;

        auto *codebook = app.add_subcommand("codebook", "Print a profile's beam codebook table");
        codebook->add_option("--profile", o.profile, "Profile name or file")->required();

        auto *map = app.add_subcommand("map", "Print the virtual measurement map of one beam");
        map->add_option("--profile", o.profile, "Profile name or file")->required();
        map->add_option("--beam", o.beam, "Beam id (default: first beam of the sweep)");

        auto *generate = app.add_subcommand("generate", "Run the beam x spot sweep and write a dataset");
        generate->add_option("--profile", o.profile, "Profile name or file")->required();
        generate->add_option("--seed", o.seed, "Master seed")->capture_default_str();
        generate->add_option("--out", o.out, "Dataset path")->required();
        generate->add_flag("--no-fading", o.no_fading, "Disable small-scale fading");
        generate->add_option("--workers", o.workers, "Worker threads (output does not depend on it)")
            ->capture_default_str();

        auto *train = app.add_subcommand("train", "Train the neural predictor or a baseline");
        train->add_option("--data", o.data, "Dataset path")->required();
        train->add_option("--out", o.out, "Model output path")->required();
        auto *widths = train->add_option("--widths", o.widths, "Hidden layer widths")->capture_default_str();
        auto *epochs = train->add_option("--epochs", o.epochs)->capture_default_str();
        auto *batch = train->add_option("--batch", o.batch)->capture_default_str();
        train->add_option("--split", o.split, "Training fraction")->capture_default_str();
        train->add_option("--lr", o.lr, "Learning rate [0.001], or shrinkage for gbrt [0.1]");
        auto *optimizer = train->add_option("--optimizer", o.optimizer, "adam or sgd")->capture_default_str();
        train->add_option("--seed", o.seed, "Split, initialization and shuffling seed")->capture_default_str();
        auto *baseline = train->add_option("--baseline", o.baseline, "linreg, tree, forest or gbrt");
        auto *max_depth = train->add_option("--max-depth", o.max_depth, "Tree depth for baselines");
        auto *n_est = train->add_option("--n-estimators", o.n_estimators, "Trees (forest) or stages (gbrt)");
        auto *loss_out = train->add_option("--loss-out", o.loss_out, "Write the per-epoch loss curve as CSV");
        baseline->excludes(widths)->excludes(epochs)->excludes(batch)->excludes(optimizer)->excludes(loss_out);
        max_depth->needs(baseline);
        n_est->needs(baseline);

        auto *eval = app.add_subcommand("eval", "Evaluate a stored model on a dataset");
        eval->add_option("--model", o.model, "Model path")->required();
        eval->add_option("--data", o.data, "Dataset path")->required();
        auto *eval_split = eval->add_option("--split", o.split, "Only score the held-out part of this split");
        eval->add_option("--seed", o.seed, "Split seed")->needs(eval_split);

        auto *predict = app.add_subcommand("predict", "Predict the metric at one (alpha, beta, d)");
        predict->add_option("--model", o.model, "Model path")->required();
        predict->add_option("--alpha", o.alpha, "Beam direction (deg)")->required();
        predict->add_option("--beta", o.beta, "Spot angle (deg)")->required();
        predict->add_option("--dist", o.dist, "Distance (ft)")->required();

        auto *plot = app.add_subcommand("plot", "Render a dataset heatmap or beta profile as SVG");
        plot->add_option("--data", o.data, "Dataset path")->required();
        plot->add_option("--kind", o.kind, "heatmap or profile")->capture_default_str();
        plot->add_option("--out", o.out, "SVG path")->required();
        auto *plot_alpha = plot->add_option("--alpha", o.alpha_list, "Comma-separated alphas for profile curves");
        auto *plot_dist = plot->add_option("--dist", o.dist, "Restrict profile curves to one distance (ft)");

        std::vector<const char *> argv{"beamscope"};
        for (const auto &a : args)
            argv.push_back(a.c_str());

        try
        {
            app.parse(static_cast<int>(argv.size()), argv.data());
        }
        catch (const CLI::ParseError &e)
        {
            const int code = app.exit(e, out, err);
            return code == 0 ? Ok : Usage;
        }

        try
        {
            if (*codebook)
                return cmd_codebook(o, out);
            if (*map)
                return cmd_map(o, out);
            if (*generate)
                return cmd_generate(o, out);
            if (*train)
                return cmd_train(o, out);
            if (*eval)
                return cmd_eval(o, out, eval_split->count() > 0);
            if (*predict)
                return cmd_predict(o, out);
            if (*plot)
            {
                (void)plot_alpha;
                return cmd_plot(o, out, plot_dist->count() > 0);
            }
        }
        catch (const UnknownProfile &e)
        {
            err << "error: " << e.what() << '\n';
            return Usage;
        }
        catch (const UnknownBeam &e)
        {
            err << "error: " << e.what() << '\n';
            return Usage;
        }
        catch (const InvalidHyperparameter &e)
        {
            err << "error: " << e.what() << '\n';
            return Usage;
        }
        catch (const InvalidArchitecture &e)
        {
            err << "error: " << e.what() << '\n';
            return Usage;
        }
        catch (const IoError &e)
        {
            err << "error: " << e.what() << '\n';
            return Io;
        }
        catch (const SchemaError &e)
        {
            err << "error: " << e.what() << '\n';
            return Parse;
        }
        catch (const InvalidProfile &e)
        {
            err << "error: invalid profile: " << e.what() << '\n';
            return Parse;
        }
        catch (const InvalidGeometry &e)
        {
            err << "error: invalid codebook: " << e.what() << '\n';
            return Parse;
        }
        catch (const EmptyDataset &e)
        {
            err << "error: " << e.what() << '\n';
            return Parse;
        }
        catch (const Error &e)
        {
            // NonFiniteLoss, ZeroVariance, SingularDesign and other numeric failures.
            err << "error: " << e.what() << '\n';
            return Numeric;
        }
        return Usage;
    }
}
