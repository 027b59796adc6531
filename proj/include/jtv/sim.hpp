#ifndef JTV_SIM_HPP
#define JTV_SIM_HPP

#include <string>
#include <vector>

#include "jtv/jpsd.hpp"

namespace jtv {

enum class GraphKind { erdos_renyi, watts_strogatz };
enum class Estimator { gbm, gwm, oracle };  // oracle returns the true JPSD

enum class SweepAxis { q, degrees, window_geometry };

struct ExperimentConfig {
    GraphKind graph_kind = GraphKind::erdos_renyi;
    int n = 100;
    int m = 128;
    double er_p = 0.1;
    int ws_k_ring = 4;
    double ws_beta = 0.3;

    int l1 = 7;  // filter tap counts (degrees l1-1, l2-1)
    int l2 = 4;

    Estimator method = Estimator::gbm;
    int window_len = 32;
    int hop = 16;
    int k2 = 5;
    double bandwidth = 0.0;  // 0 -> rho_G / 10

    int q = 1;
    std::vector<int> q_values = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::vector<int> window_lens = {16, 32, 64};
    int degree_l1_min = 2, degree_l1_max = 8;
    int degree_l2_min = 2, degree_l2_max = 6;

    int trials = 50;
    std::uint64_t seed = 0;
    bool timing = false;  // fill wall_time_s with measured seconds
};

struct MetricReport {
    double nmse = 0.0;
    double bias = 0.0;
    double std_dev = 0.0;
    double wall_time_s = 0.0;  // mean estimation seconds per trial
    int trials = 0;
};

struct SweepRow {
    double axis_value = 0.0;
    MetricReport report;
};

/// One Monte-Carlo grid point: per trial, a fresh graph and filter are
/// drawn, Q realizations synthesized, the estimator run, and the normalized
/// error vector (theta_hat - theta)/||theta|| accumulated. Trials run in
/// parallel on forked seeds with a fixed reduction order, so the report is
/// identical for any thread count.
MetricReport run_point(const ExperimentConfig& cfg, Rng master);

std::vector<SweepRow> sweep(const ExperimentConfig& cfg, SweepAxis axis);

std::string sweep_csv(const std::vector<SweepRow>& rows);

ExperimentConfig load_config_json(const std::string& path);

/// Spearman rank correlation, with average ranks for ties.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

/// One-sided permutation p-value for positive Spearman correlation.
double spearman_pvalue_positive(const std::vector<double>& a,
                                const std::vector<double>& b,
                                int permutations, Rng rng);

}  // namespace jtv

#endif
