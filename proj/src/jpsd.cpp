#include "jtv/jpsd.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "jtv/errors.hpp"

namespace jtv {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_realizations(const std::vector<CMat>& xs, const JointBasis& jb) {
    if (xs.empty()) throw EmptyInputError("no realizations given");
    for (const CMat& x : xs)
        if (x.rows() != jb.n() || x.cols() != jb.m())
            throw DimensionError("realization dimensions do not match basis");
}

void check_bank(const WindowBank& bank, const JointBasis& jb) {
    if (bank.windows.empty()) throw EmptyInputError("empty window bank");
    for (const JointWindow& w : bank.windows) {
        if (w.graph_window.size() != jb.n() || w.time_window.size() != jb.m())
            throw GeometryError("window dimensions do not match basis");
    }
}

Vec windowed_periodogram(const CMat& x, const JointBasis& jb,
                         const JointWindow& w) {
    const CMat xw = w.graph_window.cast<std::complex<double>>().asDiagonal() *
                    x *
                    w.time_window.cast<std::complex<double>>().asDiagonal();
    return vectorize(jft(jb, xw)).cwiseAbs2();
}

// Exact white-input response of one window, ||A_w phi_j||^2 over j. The
// separable structure gives a constant time factor (DFT modes have uniform
// magnitude) times a per-mode graph factor. Dividing the bank-averaged
// periodogram by the bank average of this calibrates a white process to
// exactly 1 for any bank, and the identity bank reduces to GBM.
Vec white_response(const JointWindow& w, const JointBasis& jb) {
    const int n = jb.n();
    const int m = jb.m();
    const double time_factor = w.time_window.squaredNorm() / m;
    Vec graph_factor(n);
    for (int ell = 0; ell < n; ++ell)
        graph_factor[ell] = (w.graph_window.array().square() *
                             jb.graph.vectors.col(ell).array().abs2())
                                .sum();
    Vec d(n * m);
    for (int k = 0; k < m; ++k)
        d.segment(k * n, n) = time_factor * graph_factor;
    return d;
}

Vec bank_calibration(const WindowBank& bank, const JointBasis& jb) {
    Vec cal = Vec::Zero(jb.joint_size());
    for (const JointWindow& w : bank.windows) cal += white_response(w, jb);
    cal /= static_cast<double>(bank.windows.size());
    if (cal.maxCoeff() <= 0.0)
        throw ValidationError("window bank has zero response");
    return cal;
}

Vec calibrate(Vec theta, const Vec& cal) {
    for (Eigen::Index j = 0; j < theta.size(); ++j)
        theta[j] = cal[j] > 0.0 ? theta[j] / cal[j] : 0.0;
    return theta;
}

}  // namespace

std::vector<Vec> hamming_bank(int m, int window_len, int hop) {
    if (window_len < 1 || window_len > m)
        throw GeometryError("window length must be in [1, M]");
    if (hop < 1) throw GeometryError("hop must be positive");
    const int k1 = (m - window_len) / hop + 1;
    std::vector<Vec> windows;
    windows.reserve(k1);
    for (int k = 0; k < k1; ++k) {
        Vec w = Vec::Zero(m);
        for (int i = 0; i < window_len; ++i)
            w[k * hop + i] =
                window_len == 1
                    ? 1.0
                    : 0.54 - 0.46 * std::cos(2.0 * kPi * i / (window_len - 1));
        windows.push_back(std::move(w));
    }
    return windows;
}

std::vector<Vec> graph_window_bank(const WeightedGraph& g,
                                   const SpectralBasis& basis, int k2,
                                   double bandwidth, Rng rng) {
    const int n = basis.size();
    if (g.n != n) throw DimensionError("graph does not match basis");
    if (k2 < 1 || k2 > n) throw SizeError("k2 must be in [1, N]");
    if (bandwidth <= 0.0) throw ValidationError("bandwidth must be positive");

    // Farthest-point sweep on hop distance; the seed breaks ties.
    auto hop_dist = [&](const std::vector<int>& sources) {
        std::vector<int> dist(n, -1);
        std::queue<int> frontier;
        for (int s : sources) {
            dist[s] = 0;
            frontier.push(s);
        }
        while (!frontier.empty()) {
            const int v = frontier.front();
            frontier.pop();
            for (int u = 0; u < n; ++u)
                if (dist[u] < 0 && g.weights(v, u) > 0.0) {
                    dist[u] = dist[v] + 1;
                    frontier.push(u);
                }
        }
        return dist;
    };

    std::vector<int> centers{rng.uniform_int(0, n - 1)};
    while (static_cast<int>(centers.size()) < k2) {
        const std::vector<int> dist = hop_dist(centers);
        const int best = *std::max_element(dist.begin(), dist.end());
        std::vector<int> candidates;
        for (int v = 0; v < n; ++v)
            if (dist[v] == best) candidates.push_back(v);
        centers.push_back(
            candidates[rng.uniform_int(0, static_cast<int>(candidates.size()) - 1)]);
    }

    Vec kernel(n);
    for (int i = 0; i < n; ++i)
        kernel[i] = std::exp(-basis.values[i] / bandwidth);

    std::vector<Vec> windows;
    windows.reserve(k2);
    for (int c : centers) {
        const CVec impulse = basis.vectors.row(c).adjoint();  // Phi^* e_c
        Vec w = (basis.vectors * (kernel.asDiagonal() * impulse)).real();
        w = w.cwiseMax(0.0);
        const double peak = w.maxCoeff();
        if (peak > 0.0) w /= peak;
        windows.push_back(std::move(w));
    }
    return windows;
}

WindowBank make_bank(const std::vector<Vec>& time_windows,
                     const std::vector<Vec>& graph_windows, int window_len,
                     int hop) {
    if (time_windows.empty() || graph_windows.empty())
        throw EmptyInputError("window bank needs both time and graph windows");
    WindowBank bank;
    bank.k1 = static_cast<int>(time_windows.size());
    bank.k2 = static_cast<int>(graph_windows.size());
    bank.window_len = window_len;
    bank.hop = hop;
    bank.windows.reserve(static_cast<std::size_t>(bank.k1) * bank.k2);
    for (const Vec& t : time_windows)
        for (const Vec& gw : graph_windows)
            bank.windows.push_back(JointWindow{t, gw});
    return bank;
}

JpsdVector gbm(const std::vector<CMat>& realizations, const JointBasis& jb) {
    check_realizations(realizations, jb);
    const int q = static_cast<int>(realizations.size());
    std::vector<Vec> slots(q);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < q; ++i)
        slots[i] = vectorize(jft(jb, realizations[i])).cwiseAbs2();
    Vec theta = Vec::Zero(jb.joint_size());
    for (int i = 0; i < q; ++i) theta += slots[i];
    theta /= static_cast<double>(q);
    return theta;
}

JpsdVector gbm_reference(const std::vector<CMat>& realizations,
                         const JointBasis& jb) {
    check_realizations(realizations, jb);
    Vec theta = Vec::Zero(jb.joint_size());
    for (const CMat& x : realizations)
        theta += vectorize(jft(jb, x)).cwiseAbs2();
    theta /= static_cast<double>(realizations.size());
    return theta;
}

JpsdVector gwm(const std::vector<CMat>& realizations, const JointBasis& jb,
               const WindowBank& bank, bool raw) {
    check_realizations(realizations, jb);
    check_bank(bank, jb);
    const int q = static_cast<int>(realizations.size());
    const int k = static_cast<int>(bank.windows.size());
    const int items = q * k;
    std::vector<Vec> slots(items);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < items; ++i)
        slots[i] =
            windowed_periodogram(realizations[i / k], jb, bank.windows[i % k]);
    Vec theta = Vec::Zero(jb.joint_size());
    for (int i = 0; i < items; ++i) theta += slots[i];
    theta /= static_cast<double>(items);
    if (raw) return theta;
    return calibrate(std::move(theta), bank_calibration(bank, jb));
}

JpsdVector gwm_reference(const std::vector<CMat>& realizations,
                         const JointBasis& jb, const WindowBank& bank,
                         bool raw) {
    check_realizations(realizations, jb);
    check_bank(bank, jb);
    Vec theta = Vec::Zero(jb.joint_size());
    for (const CMat& x : realizations)
        for (const JointWindow& w : bank.windows)
            theta += windowed_periodogram(x, jb, w);
    theta /= static_cast<double>(realizations.size() * bank.windows.size());
    if (raw) return theta;
    return calibrate(std::move(theta), bank_calibration(bank, jb));
}

}  // namespace jtv
