// SPDX-License-Identifier: Apache-2.0
//
// blockage-kit: human-blockage attenuation modeling for mmWave/sub-THz links
// Copyright (C) 2026 blockage-kit contributors
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
//
// Command-line surface tying the toolkit together. Exit codes: 0 success,
// 2 usage or validation error, 1 internal error. Every stochastic path is
// reproducible through --seed (or the BLOCKAGE_KIT_SEED environment
// variable); identical arguments, files and seed produce byte-identical
// primary output.

#ifndef BLOCKAGE_CLI_HPP
#define BLOCKAGE_CLI_HPP

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "blockage/analysis.hpp"
#include "blockage/dataset.hpp"
#include "blockage/errors.hpp"
#include "blockage/fitting.hpp"
#include "blockage/geometry.hpp"
#include "blockage/models.hpp"
#include "blockage/traceproc.hpp"
#include "blockage/units.hpp"

namespace blockage {
namespace cli {

namespace detail {

inline std::string format_value(const char *fmt, double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

/// A grid argument: a single value, a comma list, or start:stop:step.
inline std::vector<double> parse_grid(const std::string &spec) {
    const auto parse_one = [](const std::string &s) {
        try {
            std::size_t pos = 0;
            double v = std::stod(s, &pos);
            if (pos != s.size())
                throw std::invalid_argument(s);
            return v;
        } catch (const std::exception &) {
            throw Error(ErrorCode::UsageError, "cannot parse number '" + s + "' in grid");
        }
    };
    if (spec.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ':'))
            parts.push_back(item);
        if (parts.size() != 3)
            throw Error(ErrorCode::UsageError, "range grid must be start:stop:step");
        const double start = parse_one(parts[0]);
        const double stop = parse_one(parts[1]);
        const double step = parse_one(parts[2]);
        if (!(step > 0.0) || stop < start)
            throw Error(ErrorCode::UsageError, "range grid needs step > 0 and stop >= start");
        std::vector<double> out;
        const auto count = static_cast<std::size_t>((stop - start) / step + 1e-9) + 1;
        for (std::size_t i = 0; i < count; ++i)
            out.push_back(start + static_cast<double>(i) * step);
        return out;
    }
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_one(item));
    if (out.empty())
        throw Error(ErrorCode::UsageError, "empty grid");
    return out;
}

inline void emit(const std::string &text, const std::string &out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out)
        throw Error(ErrorCode::UsageError, "cannot open output file '" + out_path + "'");
    out << text;
}

inline Dataset load_dataset(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::UsageError, "cannot open dataset file '" + path + "'");
    return parse_dataset_csv(in, path);
}

inline TimeTrace load_trace(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::UsageError, "cannot open trace file '" + path + "'");
    return parse_trace_csv(in);
}

inline nlohmann::json load_json(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::UsageError, "cannot open file '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw Error(ErrorCode::ParseError, std::string("invalid JSON in '") + path + "': " +
                                               e.what());
    }
}

/// Resolves the model selection shared by eval/linkbudget/synth: either
/// --preset paper together with --model, or a parameter JSON file.
inline BgModelParams resolve_model(const std::string &model_name_arg, const std::string &preset,
                                   const std::string &params_path) {
    if (!params_path.empty()) {
        BgModelParams model = model_from_json(load_json(params_path));
        if (!model_name_arg.empty() && parse_model_kind(model_name_arg) != model.kind())
            throw Error(ErrorCode::UsageError,
                        "--model disagrees with the model in the parameter file");
        return model;
    }
    if (preset.empty())
        throw Error(ErrorCode::UsageError, "choose --preset paper or provide --params FILE");
    if (preset != "paper")
        throw Error(ErrorCode::UsageError, "unknown preset '" + preset + "'");
    if (model_name_arg.empty())
        throw Error(ErrorCode::UsageError, "--preset needs --model fi|ci|abg|cif");
    return paper_preset(parse_model_kind(model_name_arg));
}

inline void warn_out_of_band(const std::vector<double> &f_ghz) {
    for (double f : f_ghz) {
        if (f < paper::kBandLowGhz || f > paper::kBandHighGhz) {
            std::cerr << "warning: frequency " << f
                      << " GHz is outside the fitted 75-215 GHz band\n";
            return;
        }
    }
}

inline std::uint64_t seed_from_env_or(std::uint64_t fallback) {
    if (const char *env = std::getenv("BLOCKAGE_KIT_SEED"))
        return std::strtoull(env, nullptr, 10);
    return fallback;
}

} // namespace detail

struct EvalOptions {
    std::string model;
    std::string preset;
    std::string params_path;
    std::string geometry_path;
    std::string f_spec;
    std::string d_spec;
    std::string out_path;
};

inline void run_eval(const EvalOptions &opt) {
    const std::vector<double> f_grid =
        opt.f_spec.empty() ? paper_tones_ghz() : detail::parse_grid(opt.f_spec);
    const std::vector<double> d_grid =
        opt.d_spec.empty() ? std::vector<double>{1.0, 1.75, 2.5} : detail::parse_grid(opt.d_spec);
    detail::warn_out_of_band(f_grid);

    if (opt.model != "all") {
        BgModelParams model = detail::resolve_model(opt.model, opt.preset, opt.params_path);
        const bool needs_distance = model.kind() != ModelKind::Fi;
        if (needs_distance && opt.d_spec.empty() && f_grid.size() == 1)
            throw Error(ErrorCode::UsageError, "this model needs --d");
        // A single point prints just the value; grids print plot-ready CSV.
        if (f_grid.size() == 1 && (!needs_distance || d_grid.size() == 1)) {
            const Distance d(needs_distance ? d_grid.front() : 0.0);
            const double bg = eval(model, d, Frequency(f_grid.front())).db();
            detail::emit(detail::format_value("%.2f", bg) + "\n", opt.out_path);
            return;
        }
        std::ostringstream out;
        out << "f_ghz,d_m,model,bg_db\n";
        for (double f : f_grid)
            for (double d : d_grid)
                out << detail::format_value("%.10g", f) << ',' << detail::format_value("%.10g", d)
                    << ',' << model_name(model.kind()) << ','
                    << detail::format_value("%.10g", eval(model, Distance(d), Frequency(f)).db())
                    << '\n';
        detail::emit(out.str(), opt.out_path);
        return;
    }

    // --model all: the four fitted curves plus the two geometric estimates,
    // enough to redraw the model-comparison figure externally.
    BodyDims body;
    LinkLayout link;
    if (!opt.geometry_path.empty()) {
        auto [b, l] = geometry_from_json(detail::load_json(opt.geometry_path));
        body = b;
        link = l;
    }
    bool warned_validity = false;
    std::ostringstream out;
    out << "f_ghz,d_m,model,bg_db\n";
    for (double f : f_grid) {
        const Frequency freq(f);
        for (double d : d_grid) {
            const Distance dist(d);
            LinkLayout row_link = link;
            row_link.d_m = d;
            for (ModelKind kind :
                 {ModelKind::Fi, ModelKind::Ci, ModelKind::Abg, ModelKind::Cif}) {
                out << detail::format_value("%.10g", f) << ','
                    << detail::format_value("%.10g", d) << ',' << model_name(kind) << ','
                    << detail::format_value("%.10g",
                                            eval(paper_preset(kind), dist, freq).db())
                    << '\n';
            }
            const GppGain a = gpp_a_gain(body, row_link, freq);
            const GppGain b = gpp_b_gain(body, row_link, freq);
            if ((a.beyond_validated_band || b.beyond_validated_band) && !warned_validity) {
                std::cerr << "warning: geometric blockage models extended beyond their "
                             "100 GHz validity\n";
                warned_validity = true;
            }
            out << detail::format_value("%.10g", f) << ',' << detail::format_value("%.10g", d)
                << ",gpp_a," << detail::format_value("%.10g", a.gain.db()) << '\n';
            out << detail::format_value("%.10g", f) << ',' << detail::format_value("%.10g", d)
                << ",gpp_b," << detail::format_value("%.10g", b.gain.db()) << '\n';
        }
    }
    detail::emit(out.str(), opt.out_path);
}

inline std::string comparison_table(const std::vector<FitReport> &reports) {
    std::ostringstream out;
    out << "model  sigma_db  rmse_db   n    cond      parameters\n";
    for (const auto &r : reports) {
        char line[160];
        std::string params;
        const nlohmann::json j = to_json(r.params)["params"];
        for (auto it = j.begin(); it != j.end(); ++it)
            params += it.key() + "=" + detail::format_value("%.6g", it.value().get<double>()) +
                      " ";
        std::snprintf(line, sizeof(line), "%-5s  %8.4f  %7.4f  %4zu  %-8.3g  %s\n",
                      model_name(r.model), r.sigma_hat_db, r.rmse_insample_db, r.n_samples,
                      r.condition, params.c_str());
        out << line;
    }
    return out.str();
}

inline int run_cli(const std::vector<std::string> &arguments) {
    CLI::App app{"blockage-kit: human-blockage gain models, fitting and trace tools"};
    app.require_subcommand(1);
    app.fallthrough(); // lets --seed appear after the subcommand too
    std::uint64_t seed = detail::seed_from_env_or(0);
    app.add_option("--seed", seed, "seed for every stochastic path");

    // --- eval ---------------------------------------------------------------
    EvalOptions eval_opt;
    auto *eval_cmd = app.add_subcommand("eval", "evaluate a blockage-gain model over f/d grids");
    eval_cmd->add_option("--model", eval_opt.model, "fi|ci|abg|cif|all")->required();
    eval_cmd->add_option("--preset", eval_opt.preset, "named parameter set: paper");
    eval_cmd->add_option("--params", eval_opt.params_path, "model parameter JSON file");
    eval_cmd->add_option("--geometry", eval_opt.geometry_path,
                         "geometry JSON for the gpp curves (model all)");
    eval_cmd->add_option("--f", eval_opt.f_spec, "frequency grid in GHz (value, list or a:b:step)");
    eval_cmd->add_option("--d", eval_opt.d_spec, "distance grid in m (value, list or a:b:step)");
    eval_cmd->add_option("--out", eval_opt.out_path, "write output to a file instead of stdout");

    // --- fit ------------------------------------------------------------------
    std::string fit_data, fit_model, fit_out;
    double fit_f0 = paper::kCifCenterGhz;
    auto *fit_cmd = app.add_subcommand("fit", "least-squares fit of one model to a dataset");
    fit_cmd->add_option("--data", fit_data, "sample CSV file")->required();
    fit_cmd->add_option("--model", fit_model, "fi|ci|abg|cif")->required();
    fit_cmd->add_option("--f0-ghz", fit_f0, "CIF cross-term center frequency");
    fit_cmd->add_option("--out", fit_out, "output file");

    // --- compare ----------------------------------------------------------------
    std::string cmp_data, cmp_out;
    double cmp_f0 = paper::kCifCenterGhz;
    bool cmp_json = false;
    auto *cmp_cmd = app.add_subcommand("compare", "fit all four models and rank by sigma");
    cmp_cmd->add_option("--data", cmp_data, "sample CSV file")->required();
    cmp_cmd->add_option("--f0-ghz", cmp_f0, "CIF cross-term center frequency");
    cmp_cmd->add_flag("--json", cmp_json, "emit JSON instead of the text table");
    cmp_cmd->add_option("--out", cmp_out, "output file");

    // --- gpp ------------------------------------------------------------------
    std::string gpp_geometry, gpp_f = "75:215:17.5", gpp_out;
    BodyDims gpp_body;
    LinkLayout gpp_link;
    auto *gpp_cmd = app.add_subcommand("gpp", "geometric blockage estimates per frequency");
    gpp_cmd->add_option("--geometry", gpp_geometry, "geometry JSON file");
    gpp_cmd->add_option("--d", gpp_link.d_m, "Tx-Rx separation in m");
    gpp_cmd->add_option("--hc", gpp_link.hc_m, "antenna height in m");
    gpp_cmd->add_option("--offset", gpp_link.blocker_offset_m, "blocker offset from midpoint in m");
    gpp_cmd->add_option("--body-h", gpp_body.height_m, "body height in m");
    gpp_cmd->add_option("--body-r", gpp_body.width_m, "body width along the LoS in m");
    gpp_cmd->add_option("--body-w", gpp_body.depth_m, "body depth across the LoS in m");
    gpp_cmd->add_option("--f", gpp_f, "frequency grid in GHz");
    gpp_cmd->add_option("--out", gpp_out, "output file");

    // --- process-trace -----------------------------------------------------------
    std::string trace_path, trace_out;
    std::size_t trace_window = kDefaultSmoothingWindow;
    double trace_threshold = kDefaultEventThresholdDb;
    std::size_t trace_normalize = 0;
    auto *trace_cmd = app.add_subcommand("process-trace", "extract the blockage gain from a trace");
    trace_cmd->add_option("--trace", trace_path, "trace CSV file (t_s,gain_db)")->required();
    trace_cmd->add_option("--window", trace_window, "smoothing window in samples");
    trace_cmd->add_option("--threshold", trace_threshold, "event threshold in dB");
    trace_cmd->add_option("--normalize", trace_normalize,
                          "normalize to the LoS level first, using this reference window");
    trace_cmd->add_option("--out", trace_out, "output file");

    // --- synth ------------------------------------------------------------------
    std::string synth_kind = "dataset", synth_model, synth_preset = "paper", synth_params,
                synth_f, synth_d, synth_out;
    int synth_crossings = 8;
    double synth_sigma = -1.0;
    double synth_sideways = 0.0, synth_subject2 = 0.0;
    std::size_t synth_samples = 2048;
    double synth_fs = kDefaultSamplingHz, synth_start = 8.0, synth_ramp = 0.3,
           synth_plateau = 0.16, synth_depth = -45.5;
    double synth_k_factor = std::numeric_limits<double>::quiet_NaN();
    auto *synth_cmd = app.add_subcommand("synth", "generate a synthetic dataset or trace");
    synth_cmd->add_option("--kind", synth_kind, "dataset|trace");
    synth_cmd->add_option("--model", synth_model, "ground-truth model for datasets");
    synth_cmd->add_option("--preset", synth_preset, "named parameter set: paper");
    synth_cmd->add_option("--params", synth_params, "ground-truth parameter JSON file");
    synth_cmd->add_option("--sigma", synth_sigma, "override the residual sigma in dB");
    synth_cmd->add_option("--f", synth_f, "frequency grid in GHz");
    synth_cmd->add_option("--d", synth_d, "distance grid in m");
    synth_cmd->add_option("--crossings", synth_crossings, "crossings per (f, d) cell");
    synth_cmd->add_option("--sideways-offset", synth_sideways, "dB added to sideways samples");
    synth_cmd->add_option("--subject-offset", synth_subject2, "dB added to second-subject samples");
    synth_cmd->add_option("--samples", synth_samples, "trace length in samples");
    synth_cmd->add_option("--fs", synth_fs, "trace sampling rate in Hz");
    synth_cmd->add_option("--start", synth_start, "trace envelope: blockage start time in s");
    synth_cmd->add_option("--ramp", synth_ramp, "trace envelope: ramp duration in s");
    synth_cmd->add_option("--plateau", synth_plateau, "trace envelope: flat-bottom duration in s");
    synth_cmd->add_option("--depth", synth_depth, "trace envelope: bottom gain in dB");
    synth_cmd->add_option("--k-factor", synth_k_factor, "Rician K-factor in dB (omit: no fading)");
    synth_cmd->add_option("--out", synth_out, "output file");

    // --- anova ------------------------------------------------------------------
    std::string anova_data, anova_factor, anova_out;
    auto *anova_cmd = app.add_subcommand("anova", "one-way ANOVA of BG against one factor");
    anova_cmd->add_option("--data", anova_data, "sample CSV file")->required();
    anova_cmd->add_option("--factor", anova_factor, "frequency|distance|subject|orientation")
        ->required();
    anova_cmd->add_option("--out", anova_out, "output file");

    // --- medians ----------------------------------------------------------------
    std::string med_data, med_by, med_out;
    auto *med_cmd = app.add_subcommand("medians", "per-group median/mean/count summary");
    med_cmd->add_option("--data", med_data, "sample CSV file")->required();
    med_cmd->add_option("--by", med_by, "frequency|distance|subject|orientation")->required();
    med_cmd->add_option("--out", med_out, "output file");

    // --- linkbudget ---------------------------------------------------------------
    double lb_pt = 0.0, lb_gt = 0.0, lb_gr = 0.0, lb_d = 0.0, lb_f = 0.0;
    std::string lb_model, lb_preset, lb_params, lb_out;
    auto *lb_cmd = app.add_subcommand("linkbudget",
                                      "received power with free-space loss and blockage gain");
    lb_cmd->add_option("--pt-dbm", lb_pt, "transmit power in dBm");
    lb_cmd->add_option("--gt-db", lb_gt, "Tx antenna gain in dB");
    lb_cmd->add_option("--gr-db", lb_gr, "Rx antenna gain in dB");
    lb_cmd->add_option("--d", lb_d, "Tx-Rx separation in m")->required();
    lb_cmd->add_option("--f", lb_f, "carrier frequency in GHz")->required();
    lb_cmd->add_option("--model", lb_model, "fi|ci|abg|cif");
    lb_cmd->add_option("--preset", lb_preset, "named parameter set: paper");
    lb_cmd->add_option("--params", lb_params, "model parameter JSON file");
    lb_cmd->add_option("--out", lb_out, "output file");

    try {
        std::vector<const char *> argv;
        argv.push_back("blockage-kit");
        for (const auto &a : arguments)
            argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());

        if (eval_cmd->parsed()) {
            run_eval(eval_opt);
        } else if (fit_cmd->parsed()) {
            const FitReport report =
                fit(parse_model_kind(fit_model), detail::load_dataset(fit_data), Frequency(fit_f0));
            detail::emit(to_json(report).dump(2) + "\n", fit_out);
        } else if (cmp_cmd->parsed()) {
            const auto reports = compare_models(detail::load_dataset(cmp_data), Frequency(cmp_f0));
            if (cmp_json) {
                nlohmann::json j = nlohmann::json::array();
                for (const auto &r : reports)
                    j.push_back(to_json(r));
                detail::emit(j.dump(2) + "\n", cmp_out);
            } else {
                detail::emit(comparison_table(reports), cmp_out);
            }
        } else if (gpp_cmd->parsed()) {
            if (!gpp_geometry.empty()) {
                auto [b, l] = geometry_from_json(detail::load_json(gpp_geometry));
                gpp_body = b;
                gpp_link = l;
            } else {
                validate_geometry(gpp_body, gpp_link);
            }
            bool warned = false;
            std::ostringstream out;
            out << "f_ghz,bg_a_db,bg_b_db\n";
            for (double f : detail::parse_grid(gpp_f)) {
                const Frequency freq(f);
                const GppGain a = gpp_a_gain(gpp_body, gpp_link, freq);
                const GppGain b = gpp_b_gain(gpp_body, gpp_link, freq);
                if ((a.beyond_validated_band || b.beyond_validated_band) && !warned) {
                    std::cerr << "warning: geometric blockage models extended beyond their "
                                 "100 GHz validity\n";
                    warned = true;
                }
                if (a.full_block_singular || b.full_block_singular)
                    std::cerr << "warning: full-block singularity clamped at " << f << " GHz\n";
                out << detail::format_value("%.10g", f) << ','
                    << detail::format_value("%.10g", a.gain.db()) << ','
                    << detail::format_value("%.10g", b.gain.db()) << '\n';
            }
            detail::emit(out.str(), gpp_out);
        } else if (trace_cmd->parsed()) {
            TimeTrace trace = detail::load_trace(trace_path);
            if (trace_normalize > 0)
                trace = normalize_to_los(trace, trace_normalize);
            const BlockageEvent event = extract_bg(trace, trace_window, trace_threshold);
            detail::emit(event_json(event, trace.fs_hz).dump(2) + "\n", trace_out);
        } else if (synth_cmd->parsed()) {
            Rng rng(seed);
            if (synth_kind == "dataset") {
                BgModelParams truth =
                    detail::resolve_model(synth_model, synth_preset, synth_params);
                if (synth_sigma >= 0.0)
                    truth.sigma_db = synth_sigma;
                SynthGrid grid;
                if (!synth_f.empty())
                    grid.f_ghz = detail::parse_grid(synth_f);
                if (!synth_d.empty())
                    grid.d_m = detail::parse_grid(synth_d);
                grid.crossings = synth_crossings;
                const Dataset data =
                    synth_dataset(truth, grid, GroupOffsets{synth_sideways, synth_subject2}, rng);
                std::ostringstream out;
                write_dataset_csv(out, data);
                detail::emit(out.str(), synth_out);
            } else if (synth_kind == "trace") {
                const Envelope envelope =
                    blockage_envelope(synth_start, synth_ramp, synth_plateau, synth_depth);
                FadingSpec fading;
                if (!std::isnan(synth_k_factor))
                    fading.k_factor_db = synth_k_factor;
                const TimeTrace trace =
                    synth_trace(envelope, fading, rng, synth_samples, synth_fs);
                std::ostringstream out;
                write_trace_csv(out, trace);
                detail::emit(out.str(), synth_out);
            } else {
                throw Error(ErrorCode::UsageError, "--kind must be dataset or trace");
            }
        } else if (anova_cmd->parsed()) {
            const AnovaResult r =
                one_way_anova(detail::load_dataset(anova_data), parse_group_key(anova_factor));
            nlohmann::json j{{"factor", r.factor},
                             {"f_stat", r.f_stat},
                             {"df_between", r.df_between},
                             {"df_within", r.df_within},
                             {"p_value", r.p_value},
                             {"zero_within_variance", r.zero_within_variance}};
            detail::emit(j.dump(2) + "\n", anova_out);
        } else if (med_cmd->parsed()) {
            const GroupSummary summary =
                group_medians(detail::load_dataset(med_data), parse_group_key(med_by));
            std::ostringstream out;
            out << group_key_name(summary.key) << ",median_db,mean_db,count\n";
            for (const auto &row : summary.rows)
                out << row.label << ',' << detail::format_value("%.10g", row.median_db) << ','
                    << detail::format_value("%.10g", row.mean_db) << ',' << row.count << '\n';
            detail::emit(out.str(), med_out);
        } else if (lb_cmd->parsed()) {
            const BgModelParams model = detail::resolve_model(lb_model, lb_preset, lb_params);
            detail::warn_out_of_band({lb_f});
            const double pr =
                link_budget_dbm(lb_pt, lb_gt, lb_gr, Distance(lb_d), Frequency(lb_f), model);
            detail::emit(detail::format_value("%.2f", pr) + "\n", lb_out);
        }
        return 0;
    } catch (const CLI::CallForHelp &e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace cli
} // namespace blockage

#endif
