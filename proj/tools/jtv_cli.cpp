// Command-line front end: graph generation, transforms, translation,
// filtering, JWSS synthesis, JPSD estimation, experiment sweeps and feature
// extraction. Every run with the same flags and seed writes byte-identical
// outputs.
#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <omp.h>
#include <string>
#include <vector>

#include "jtv/errors.hpp"
#include "jtv/features.hpp"
#include "jtv/filtering.hpp"
#include "jtv/graph.hpp"
#include "jtv/io.hpp"
#include "jtv/jpsd.hpp"
#include "jtv/sim.hpp"
#include "jtv/stationarity.hpp"
#include "jtv/translation.hpp"

namespace {

using namespace jtv;

struct CliState {
    int threads = 0;
    bool verbose = false;
};

void apply_threads(const CliState& state) {
    if (state.threads > 0) omp_set_num_threads(state.threads);
}

double resolve_bandwidth(double flag_value, const JointBasis& jb) {
    return flag_value > 0.0 ? flag_value : jb.graph.rho / 10.0;
}

std::vector<CMat> load_realizations(const std::vector<std::string>& paths) {
    std::vector<CMat> out;
    out.reserve(paths.size());
    for (const std::string& p : paths) out.push_back(load_signal(p));
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"joint time-vertex signal processing toolkit"};
    app.require_subcommand(1);
    CliState state;
    app.add_option("--threads", state.threads,
                   "worker threads (default: machine parallelism)");
    app.add_flag("--verbose", state.verbose, "chatty progress on stderr");

    // graph gen
    auto* graph = app.add_subcommand("graph", "graph utilities");
    graph->require_subcommand(1);
    auto* graph_gen = graph->add_subcommand("gen", "generate a random graph");
    std::string gg_kind = "er", gg_out;
    int gg_n = 100, gg_k_ring = 4, gg_m = 128;
    double gg_p = 0.1, gg_beta = 0.3;
    std::uint64_t gg_seed = 0;
    graph_gen->add_option("--kind", gg_kind, "er | ws | cycle")
        ->check(CLI::IsMember({"er", "ws", "cycle"}));
    graph_gen->add_option("--n", gg_n, "vertex count");
    graph_gen->add_option("--p", gg_p, "ER edge probability");
    graph_gen->add_option("--k-ring", gg_k_ring, "WS ring degree (even)");
    graph_gen->add_option("--beta", gg_beta, "WS rewiring probability");
    graph_gen->add_option("--m", gg_m, "cycle length (kind=cycle)");
    graph_gen->add_option("--seed", gg_seed, "generator seed");
    graph_gen->add_option("--out", gg_out, "output graph JSON")->required();

    // transform jft|ijft
    auto* transform = app.add_subcommand("transform", "joint Fourier transforms");
    transform->require_subcommand(1);
    std::string tf_graph, tf_in, tf_out;
    auto add_transform_opts = [&](CLI::App* sub) {
        sub->add_option("--graph", tf_graph, "graph JSON")->required();
        sub->add_option("--in", tf_in, "input signal (.csv or TVSG)")->required();
        sub->add_option("--out", tf_out, "output signal (TVSG unless .csv)")
            ->required();
    };
    auto* tf_fwd = transform->add_subcommand("jft", "forward JFT");
    add_transform_opts(tf_fwd);
    auto* tf_inv = transform->add_subcommand("ijft", "inverse JFT");
    add_transform_opts(tf_inv);

    // translate
    auto* translate = app.add_subcommand("translate", "joint translation");
    std::string tr_graph, tr_in, tr_out;
    int tr_ups = 0, tr_theta = 0;
    translate->add_option("--graph", tr_graph, "graph JSON")->required();
    translate->add_option("--in", tr_in, "input signal")->required();
    translate->add_option("--out", tr_out, "output signal")->required();
    translate->add_option("--upsilon", tr_ups, "time shift");
    translate->add_option("--theta", tr_theta, "graph shift");

    // filter gen|apply
    auto* filter = app.add_subcommand("filter", "JFIR joint filters");
    filter->require_subcommand(1);
    auto* filter_gen = filter->add_subcommand(
        "gen", "draw random taps, normalized to peak response 1");
    std::string fg_graph, fg_out;
    int fg_l1 = 7, fg_l2 = 4, fg_m = 128;
    std::uint64_t fg_seed = 0;
    filter_gen->add_option("--graph", fg_graph, "graph JSON")->required();
    filter_gen->add_option("--m", fg_m, "time length M");
    filter_gen->add_option("--l1", fg_l1, "time tap count");
    filter_gen->add_option("--l2", fg_l2, "graph tap count");
    filter_gen->add_option("--seed", fg_seed, "tap seed");
    filter_gen->add_option("--out", fg_out, "output filter JSON")->required();

    auto* filter_apply = filter->add_subcommand("apply", "apply a filter");
    std::string fa_graph, fa_filter, fa_in, fa_out;
    filter_apply->add_option("--graph", fa_graph, "graph JSON")->required();
    filter_apply->add_option("--filter", fa_filter, "filter JSON")->required();
    filter_apply->add_option("--in", fa_in, "input signal")->required();
    filter_apply->add_option("--out", fa_out, "output signal")->required();

    // jwss synth
    auto* jwss = app.add_subcommand("jwss", "JWSS process synthesis");
    jwss->require_subcommand(1);
    auto* jwss_synth = jwss->add_subcommand(
        "synth", "filter white noise into JWSS realizations");
    std::string js_graph, js_filter, js_prefix;
    int js_q = 1, js_m = 128;
    std::uint64_t js_seed = 0;
    bool js_real = false;
    jwss_synth->add_option("--graph", js_graph, "graph JSON")->required();
    jwss_synth->add_option("--filter", js_filter, "filter JSON")->required();
    jwss_synth->add_option("--m", js_m, "time length M");
    jwss_synth->add_option("--q", js_q, "number of realizations");
    jwss_synth->add_option("--seed", js_seed, "noise seed");
    jwss_synth->add_flag("--real", js_real,
                         "conjugate-symmetric response, real output");
    jwss_synth
        ->add_option("--out-prefix", js_prefix,
                     "writes <prefix>_q<i>.tvsg and <prefix>_theta.csv")
        ->required();

    // jpsd estimate
    auto* jpsd_cmd = app.add_subcommand("jpsd", "JPSD estimation");
    jpsd_cmd->require_subcommand(1);
    auto* jpsd_est = jpsd_cmd->add_subcommand("estimate", "GBM / GWM estimate");
    std::string je_method = "gbm", je_graph, je_out;
    std::vector<std::string> je_signals;
    int je_window_len = 32, je_hop = 16, je_k2 = 5;
    double je_bandwidth = 0.0;
    std::uint64_t je_seed = 0;
    bool je_raw = false;
    jpsd_est->add_option("--method", je_method, "gbm | gwm")
        ->check(CLI::IsMember({"gbm", "gwm"}));
    jpsd_est->add_option("--graph", je_graph, "graph JSON")->required();
    jpsd_est
        ->add_option("--signal", je_signals,
                     "realization file(s), repeatable")
        ->required();
    jpsd_est->add_option("--L", je_window_len, "time window length");
    jpsd_est->add_option("--hop", je_hop, "window hop (delta tau)");
    jpsd_est->add_option("--k2", je_k2, "graph window count");
    jpsd_est->add_option("--bandwidth", je_bandwidth,
                         "graph window bandwidth (0 = rho/10)");
    jpsd_est->add_option("--seed", je_seed, "graph window center seed");
    jpsd_est->add_flag("--raw-gwm", je_raw,
                       "skip the window gain normalization");
    jpsd_est->add_option("--out", je_out, "output theta CSV")->required();

    // sim sweep
    auto* sim_cmd = app.add_subcommand("sim", "Monte-Carlo experiments");
    sim_cmd->require_subcommand(1);
    auto* sim_sweep = sim_cmd->add_subcommand("sweep", "sweep one axis");
    std::string ss_config, ss_axis = "q", ss_out;
    int ss_trials = -1;
    std::int64_t ss_seed = -1;
    bool ss_timing = false;
    sim_sweep->add_option("--config", ss_config, "experiment config JSON")
        ->required();
    sim_sweep->add_option("--axis", ss_axis, "q | degrees | window_geometry")
        ->check(CLI::IsMember({"q", "degrees", "window_geometry"}));
    sim_sweep->add_option("--trials", ss_trials,
                          "override the config trial count");
    sim_sweep->add_option("--seed", ss_seed, "override the config seed");
    sim_sweep->add_flag("--timing", ss_timing,
                        "fill wall_time_s with measured seconds (the column "
                        "is 0 by default so outputs stay reproducible)");
    sim_sweep->add_option("--out", ss_out, "output CSV")->required();

    // features build
    auto* features_cmd = app.add_subcommand("features", "feature extraction");
    features_cmd->require_subcommand(1);
    auto* features_build = features_cmd->add_subcommand(
        "build", "kernel graph + framing + JPSD features + z-score");
    std::string fb_manifest, fb_out;
    double fb_frame_ms = 150.0, fb_gamma = 5.1, fb_kappa_glb = 2.0,
           fb_kappa_loc = 1.0, fb_snr_db = 0.0;
    int fb_knn = 0;
    bool fb_have_snr = false, fb_no_zscore = false;
    std::uint64_t fb_seed = 0;
    features_build->add_option("--manifest", fb_manifest, "manifest JSON")
        ->required();
    features_build->add_option("--frame-ms", fb_frame_ms, "frame length (ms)");
    features_build->add_option("--gamma", fb_gamma, "kernel scale");
    features_build->add_option("--kappa-global", fb_kappa_glb,
                               "kernel gain on glb pairs");
    features_build->add_option("--kappa-local", fb_kappa_loc,
                               "kernel gain elsewhere");
    features_build->add_option("--knn", fb_knn,
                               "sparsify to k nearest neighbours (0 = complete)");
    features_build->add_option("--snr-db", fb_snr_db,
                               "add white noise at this SNR");
    features_build->add_flag("--no-zscore", fb_no_zscore,
                             "skip column standardization");
    features_build->add_option("--seed", fb_seed, "noise seed");
    features_build->add_option("--out", fb_out, "output features CSV")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message and usage
        return 1;
    }
    apply_threads(state);

    if (graph_gen->parsed()) {
        WeightedGraph g;
        if (gg_kind == "er")
            g = gen_erdos_renyi(gg_n, gg_p, Rng(gg_seed));
        else if (gg_kind == "ws")
            g = gen_watts_strogatz(gg_n, gg_k_ring, gg_beta, Rng(gg_seed));
        else
            g = cycle_graph(gg_m);
        save_graph_json(g, gg_out);
        if (state.verbose)
            std::cerr << "wrote " << gg_out << " (" << edge_count(g)
                      << " edges)\n";
        return 0;
    }

    if (tf_fwd->parsed() || tf_inv->parsed()) {
        const CMat x = load_signal(tf_in);
        const JointBasis jb = make_joint_basis(load_graph_json(tf_graph),
                                               static_cast<int>(x.cols()));
        save_signal(tf_fwd->parsed() ? jft(jb, x) : inverse_jft(jb, x), tf_out);
        return 0;
    }

    if (translate->parsed()) {
        const CMat x = load_signal(tr_in);
        const JointBasis jb = make_joint_basis(load_graph_json(tr_graph),
                                               static_cast<int>(x.cols()));
        save_signal(joint_translate(jb, x, tr_ups, tr_theta), tr_out);
        return 0;
    }

    if (filter_gen->parsed()) {
        const JointBasis jb =
            make_joint_basis(load_graph_json(fg_graph), fg_m);
        save_filter_json(random_filter(fg_l1, fg_l2, jb, Rng(fg_seed)), fg_out);
        return 0;
    }

    if (filter_apply->parsed()) {
        const CMat x = load_signal(fa_in);
        const JointBasis jb = make_joint_basis(load_graph_json(fa_graph),
                                               static_cast<int>(x.cols()));
        save_signal(apply_filter(load_filter_json(fa_filter), jb, x), fa_out);
        return 0;
    }

    if (jwss_synth->parsed()) {
        const JointBasis jb =
            make_joint_basis(load_graph_json(js_graph), js_m);
        const JwssSynthesis synth = synthesize_jwss(
            load_filter_json(js_filter), jb, js_q, Rng(js_seed), js_real);
        for (int q = 0; q < js_q; ++q)
            save_tvsg(synth.realizations[q],
                      js_prefix + "_q" + std::to_string(q) + ".tvsg");
        save_jpsd_csv(synth.true_jpsd, jb, js_prefix + "_theta.csv");
        return 0;
    }

    if (jpsd_est->parsed()) {
        const std::vector<CMat> xs = load_realizations(je_signals);
        const WeightedGraph g = load_graph_json(je_graph);
        const JointBasis jb =
            make_joint_basis(g, static_cast<int>(xs.front().cols()));
        JpsdVector theta;
        if (je_method == "gbm") {
            theta = gbm(xs, jb);
        } else {
            const WindowBank bank = make_bank(
                hamming_bank(jb.m(), je_window_len, je_hop),
                graph_window_bank(g, jb.graph, je_k2,
                                  resolve_bandwidth(je_bandwidth, jb),
                                  Rng(je_seed)),
                je_window_len, je_hop);
            theta = gwm(xs, jb, bank, je_raw);
        }
        save_jpsd_csv(theta, jb, je_out);
        return 0;
    }

    if (sim_sweep->parsed()) {
        ExperimentConfig cfg = load_config_json(ss_config);
        if (ss_trials > 0) cfg.trials = ss_trials;
        if (ss_seed >= 0) cfg.seed = static_cast<std::uint64_t>(ss_seed);
        cfg.timing = ss_timing;
        SweepAxis axis = SweepAxis::q;
        if (ss_axis == "degrees") axis = SweepAxis::degrees;
        if (ss_axis == "window_geometry") axis = SweepAxis::window_geometry;
        const std::string csv = sweep_csv(sweep(cfg, axis));
        std::ofstream out(ss_out);
        if (!out) throw ValidationError("cannot write " + ss_out);
        out << csv;
        return 0;
    }

    if (features_build->parsed()) {
        fb_have_snr = features_build->count("--snr-db") > 0;
        const SampleManifest manifest = load_manifest_json(fb_manifest);
        const SensorLayout layout = load_layout_json(manifest.layout_path);
        const WeightedGraph g =
            kernel_graph(layout, fb_gamma, fb_kappa_glb, fb_kappa_loc, fb_knn);

        std::vector<std::vector<Mat>> sample_frames;
        std::vector<std::string> labels;
        int frame_len = -1;
        Rng noise_rng(fb_seed);
        for (std::size_t s = 0; s < manifest.samples.size(); ++s) {
            Mat raw = load_matrix_csv(manifest.samples[s].path);
            if (raw.rows() != layout.channels())
                throw GeometryError("sample row count does not match layout");
            if (fb_have_snr)
                raw = add_noise(raw, fb_snr_db, noise_rng.fork(s));
            auto frames = frame_signal(raw, fb_frame_ms, manifest.rate_hz);
            if (frames.empty())
                throw GeometryError("sample shorter than one frame: " +
                                    manifest.samples[s].path);
            if (frame_len < 0) frame_len = static_cast<int>(frames[0].cols());
            sample_frames.push_back(std::move(frames));
            labels.push_back(manifest.samples[s].label);
        }

        const JointBasis jb = make_joint_basis(g, frame_len);
        FeatureMatrix fm = extract_jpsd_features(sample_frames, jb, labels);
        if (!fb_no_zscore) fm = zscore(fm);
        save_features_csv(fm, fb_out);
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const jtv::ValidationError& e) {
        std::cerr << "error: kind=validation msg=\"" << e.what() << "\"\n";
        return 1;
    } catch (const jtv::NumericError& e) {
        std::cerr << "error: kind=numeric msg=\"" << e.what() << "\"\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: kind=internal msg=\"" << e.what() << "\"\n";
        return 2;
    }
}
