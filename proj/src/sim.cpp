#include "jtv/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "jtv/errors.hpp"

namespace jtv {

namespace {

WeightedGraph draw_graph(const ExperimentConfig& cfg, Rng rng) {
    switch (cfg.graph_kind) {
        case GraphKind::erdos_renyi:
            return gen_erdos_renyi(cfg.n, cfg.er_p, rng);
        case GraphKind::watts_strogatz:
            return gen_watts_strogatz(cfg.n, cfg.ws_k_ring, cfg.ws_beta, rng);
    }
    throw ValidationError("unknown graph kind");
}

struct TrialOutcome {
    Vec error;       // (theta_hat - theta) / ||theta||
    double seconds = 0.0;
};

TrialOutcome run_trial(const ExperimentConfig& cfg, Rng rng) {
    const WeightedGraph g = draw_graph(cfg, rng.fork(0));
    const JointBasis jb = make_joint_basis(g, cfg.m);
    const JointFilterSpec filter =
        random_filter(cfg.l1, cfg.l2, jb, rng.fork(1));
    const JwssSynthesis synth =
        synthesize_jwss(filter, jb, cfg.q, rng.fork(2));
    const double theta_norm = synth.true_jpsd.norm();
    if (theta_norm <= 0.0)
        throw NotDefinedError("true JPSD has zero norm");

    WindowBank bank;
    if (cfg.method == Estimator::gwm) {
        const double bandwidth =
            cfg.bandwidth > 0.0 ? cfg.bandwidth : jb.graph.rho / 10.0;
        bank = make_bank(hamming_bank(cfg.m, cfg.window_len, cfg.hop),
                         graph_window_bank(g, jb.graph, cfg.k2, bandwidth,
                                           rng.fork(3)),
                         cfg.window_len, cfg.hop);
    }

    const auto start = std::chrono::steady_clock::now();
    JpsdVector estimate;
    switch (cfg.method) {
        case Estimator::gbm:
            estimate = gbm(synth.realizations, jb);
            break;
        case Estimator::gwm:
            estimate = gwm(synth.realizations, jb, bank);
            break;
        case Estimator::oracle:
            estimate = synth.true_jpsd;
            break;
    }
    const auto stop = std::chrono::steady_clock::now();

    TrialOutcome out;
    out.error = (estimate - synth.true_jpsd) / theta_norm;
    out.seconds = std::chrono::duration<double>(stop - start).count();
    return out;
}

}  // namespace

MetricReport run_point(const ExperimentConfig& cfg, Rng master) {
    if (cfg.trials < 1) throw SizeError("need at least one trial");
    if (cfg.q < 1) throw SizeError("need at least one realization");
    std::vector<TrialOutcome> outcomes(cfg.trials);
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < cfg.trials; ++t)
        outcomes[t] = run_trial(cfg, master.fork(static_cast<std::uint64_t>(t)));

    const Eigen::Index size = outcomes.front().error.size();
    Vec mean_error = Vec::Zero(size);
    double nmse = 0.0, seconds = 0.0;
    for (const TrialOutcome& o : outcomes) {
        mean_error += o.error;
        nmse += o.error.squaredNorm();
        seconds += o.seconds;
    }
    mean_error /= static_cast<double>(cfg.trials);
    nmse /= static_cast<double>(cfg.trials);

    double spread = 0.0;
    for (const TrialOutcome& o : outcomes)
        spread += (o.error - mean_error).squaredNorm();
    spread /= static_cast<double>(cfg.trials);

    MetricReport report;
    report.nmse = nmse;
    report.bias = mean_error.norm();
    report.std_dev = std::sqrt(spread);
    report.wall_time_s = cfg.timing ? seconds / cfg.trials : 0.0;
    report.trials = cfg.trials;
    return report;
}

std::vector<SweepRow> sweep(const ExperimentConfig& cfg, SweepAxis axis) {
    const Rng master(cfg.seed);
    std::vector<SweepRow> rows;
    int index = 0;
    auto push = [&](double axis_value, const ExperimentConfig& point) {
        rows.push_back(
            {axis_value, run_point(point, master.fork(static_cast<std::uint64_t>(index)))});
        ++index;
    };
    switch (axis) {
        case SweepAxis::q:
            for (int q : cfg.q_values) {
                ExperimentConfig point = cfg;
                point.q = q;
                push(static_cast<double>(q), point);
            }
            break;
        case SweepAxis::degrees:
            for (int l1 = cfg.degree_l1_min; l1 <= cfg.degree_l1_max; ++l1) {
                for (int l2 = cfg.degree_l2_min; l2 <= cfg.degree_l2_max; ++l2) {
                    ExperimentConfig point = cfg;
                    point.l1 = l1;
                    point.l2 = l2;
                    // axis_value encodes the pair as l1*10 + l2
                    push(static_cast<double>(l1 * 10 + l2), point);
                }
            }
            break;
        case SweepAxis::window_geometry:
            for (int len : cfg.window_lens) {
                ExperimentConfig point = cfg;
                point.window_len = len;
                point.hop = std::max(1, len / 2);  // 50% overlap
                push(static_cast<double>(len), point);
            }
            break;
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "axis_value,nmse,bias,std,wall_time_s,trials\n";
    char line[256];
    for (const SweepRow& r : rows) {
        std::snprintf(line, sizeof line, "%.15g,%.15g,%.15g,%.15g,%.15g,%d\n",
                      r.axis_value, r.report.nmse, r.report.bias,
                      r.report.std_dev, r.report.wall_time_s, r.report.trials);
        out << line;
    }
    return out.str();
}

ExperimentConfig load_config_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("bad config JSON in " + path + ": " + e.what());
    }
    ExperimentConfig cfg;
    auto get = [&](const char* field, auto& slot) {
        if (doc.contains(field)) slot = doc[field].get<std::decay_t<decltype(slot)>>();
    };
    std::string graph = "er", method = "gbm";
    get("graph", graph);
    get("method", method);
    if (graph == "er")
        cfg.graph_kind = GraphKind::erdos_renyi;
    else if (graph == "ws")
        cfg.graph_kind = GraphKind::watts_strogatz;
    else
        throw ValidationError("config: graph must be 'er' or 'ws'");
    if (method == "gbm")
        cfg.method = Estimator::gbm;
    else if (method == "gwm")
        cfg.method = Estimator::gwm;
    else if (method == "oracle")
        cfg.method = Estimator::oracle;
    else
        throw ValidationError("config: method must be gbm, gwm or oracle");
    get("n", cfg.n);
    get("m", cfg.m);
    get("p", cfg.er_p);
    get("k_ring", cfg.ws_k_ring);
    get("beta", cfg.ws_beta);
    get("l1", cfg.l1);
    get("l2", cfg.l2);
    get("window_len", cfg.window_len);
    get("hop", cfg.hop);
    get("k2", cfg.k2);
    get("bandwidth", cfg.bandwidth);
    get("q", cfg.q);
    get("q_values", cfg.q_values);
    get("window_lens", cfg.window_lens);
    get("trials", cfg.trials);
    get("seed", cfg.seed);
    if (doc.contains("degree_grid")) {
        const auto& grid = doc["degree_grid"];
        if (grid.contains("l1")) {
            cfg.degree_l1_min = grid["l1"][0].get<int>();
            cfg.degree_l1_max = grid["l1"][1].get<int>();
        }
        if (grid.contains("l2")) {
            cfg.degree_l2_min = grid["l2"][0].get<int>();
            cfg.degree_l2_max = grid["l2"][1].get<int>();
        }
    }
    return cfg;
}

namespace {

Vec ranks_with_ties(const std::vector<double>& values) {
    const int n = static_cast<int>(values.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return values[a] < values[b]; });
    Vec ranks(n);
    int i = 0;
    while (i < n) {
        int j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double avg = 0.5 * (i + j) + 1.0;
        for (int k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

double pearson(const Vec& a, const Vec& b) {
    const double ma = a.mean(), mb = b.mean();
    const Vec da = a.array() - ma, db = b.array() - mb;
    const double denom = da.norm() * db.norm();
    if (denom == 0.0) return 0.0;
    return da.dot(db) / denom;
}

}  // namespace

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2)
        throw DimensionError("spearman needs two equal-length series");
    return pearson(ranks_with_ties(a), ranks_with_ties(b));
}

double spearman_pvalue_positive(const std::vector<double>& a,
                                const std::vector<double>& b,
                                int permutations, Rng rng) {
    const double observed = spearman(a, b);
    std::vector<double> shuffled = b;
    int as_extreme = 0;
    for (int p = 0; p < permutations; ++p) {
        for (int i = static_cast<int>(shuffled.size()) - 1; i > 0; --i)
            std::swap(shuffled[i], shuffled[rng.uniform_int(0, i)]);
        if (spearman(a, shuffled) >= observed) ++as_extreme;
    }
    return (as_extreme + 1.0) / (permutations + 1.0);
}

}  // namespace jtv
