#include "jtv/stationarity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "jtv/errors.hpp"

namespace jtv {

namespace {

constexpr int kMaxDenseJointSize = 4096;
constexpr double kOrbitTol = 1e-9;

// Cluster ids for values equal within tol (chained on the sorted order).
std::vector<int> cluster_values(const Vec& values, double tol) {
    const int n = static_cast<int>(values.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return values[a] < values[b]; });
    std::vector<int> cluster(n, 0);
    int current = 0;
    for (int i = 1; i < n; ++i) {
        if (values[order[i]] - values[order[i - 1]] > tol) ++current;
        cluster[order[i]] = current;
    }
    cluster[order[0]] = 0;
    return cluster;
}

// Phi_J^* R Phi_J without materializing Phi_J: column-wise JFTs.
CMat joint_rotate(const CMat& R, const JointBasis& jb) {
    const int n = jb.n();
    const int m = jb.m();
    const Eigen::Index size = R.rows();
    CMat A(size, size);
    for (Eigen::Index c = 0; c < size; ++c)
        A.col(c) = vectorize(jft(jb, unvectorize(R.col(c), n, m)));
    CMat B = A.adjoint();
    for (Eigen::Index c = 0; c < size; ++c)
        B.col(c) = vectorize(jft(jb, unvectorize(B.col(c), n, m)));
    return B.adjoint();
}

void check_dense_size(const JointBasis& jb) {
    if (jb.joint_size() > kMaxDenseJointSize)
        throw SizeError("dense covariance diagnostics are capped at NM <= 4096");
}

}  // namespace

JwssSynthesis synthesize_jwss(const JointFilterSpec& spec,
                              const JointBasis& jb, int q_realizations,
                              Rng rng, bool real_valued) {
    if (q_realizations < 1)
        throw SizeError("need at least one realization");
    const int n = jb.n();
    const int m = jb.m();
    SpectralResponse resp = spectral_response(spec, jb);
    if (real_valued) {
        // Conjugate symmetry over k <-> M-k makes the filter map real noise
        // to real signals.
        CMat grid = unvectorize(resp.response, n, m);
        CMat sym(n, m);
        for (int k = 0; k < m; ++k) {
            const int kc = (m - k) % m;
            sym.col(k) = 0.5 * (grid.col(k) + grid.col(kc).conjugate());
        }
        resp.response = vectorize(sym);
    }

    JwssSynthesis out;
    out.true_jpsd = resp.response.cwiseAbs2();
    out.realizations.assign(q_realizations, CMat());
#pragma omp parallel for schedule(dynamic)
    for (int q = 0; q < q_realizations; ++q) {
        Rng noise_rng = rng.fork(static_cast<std::uint64_t>(q));
        CMat z(n, m);
        for (int c = 0; c < m; ++c)
            for (int r = 0; r < n; ++r) z(r, c) = noise_rng.gaussian();
        CMat x = apply_response(resp, jb, z);
        if (real_valued) x = x.real().cast<std::complex<double>>();
        out.realizations[q] = std::move(x);
    }
    return out;
}

CMat analytic_covariance(const JpsdVector& theta, const JointBasis& jb) {
    check_dense_size(jb);
    const int n = jb.n();
    const int m = jb.m();
    const int size = n * m;
    if (theta.size() != size)
        throw DimensionError("theta length does not match joint basis");
    // Column c of Phi diag(theta) Phi^* is IJFT(theta ⊙ JFT(e_c)).
    CMat R(size, size);
    for (int c = 0; c < size; ++c) {
        CMat e = CMat::Zero(n, m);
        e(c % n, c / n) = 1.0;
        CMat ehat = jft(jb, e);
        ehat.array() *=
            unvectorize(theta.cast<std::complex<double>>(), n, m).array();
        R.col(c) = vectorize(inverse_jft(jb, ehat));
    }
    return R;
}

EmpiricalCovariance sample_covariance(const std::vector<CMat>& realizations) {
    if (realizations.empty()) throw EmptyInputError("no realizations");
    const Eigen::Index rows = realizations.front().rows();
    const Eigen::Index cols = realizations.front().cols();
    const Eigen::Index size = rows * cols;
    EmpiricalCovariance cov;
    cov.matrix = CMat::Zero(size, size);
    cov.sample_count = static_cast<int>(realizations.size());
    for (const CMat& x : realizations) {
        if (x.rows() != rows || x.cols() != cols)
            throw DimensionError("realizations have mixed dimensions");
        const CVec v = vectorize(x);
        cov.matrix.noalias() += v * v.adjoint();
    }
    cov.matrix /= static_cast<double>(cov.sample_count);
    return cov;
}

double diagonalization_residual(const EmpiricalCovariance& cov,
                                const JointBasis& jb) {
    check_dense_size(jb);
    const int size = jb.joint_size();
    if (cov.matrix.rows() != size || cov.matrix.cols() != size)
        throw DimensionError("covariance does not match joint basis");

    const CMat C = joint_rotate(cov.matrix, jb);
    const double total = C.norm();
    if (total == 0.0) return 0.0;

    // Joint-frequency orbits: identical (lambda_G, lambda_D) pairs.
    const std::vector<int> gcluster = cluster_values(jb.graph.values, kOrbitTol);
    const std::vector<int> dcluster = cluster_values(jb.time.values, kOrbitTol);
    const int n = jb.n();
    auto orbit = [&](int j) {
        return std::make_pair(gcluster[j % n], dcluster[j / n]);
    };

    double off = 0.0;
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j)
            if (i != j && orbit(i) != orbit(j)) off += std::norm(C(i, j));
    return std::sqrt(off) / total;
}

double block_circulant_residual(const EmpiricalCovariance& cov, int n, int m) {
    if (cov.matrix.rows() != static_cast<Eigen::Index>(n) * m ||
        cov.matrix.cols() != cov.matrix.rows())
        throw DimensionError("covariance is not an (n*m) square matrix");
    const double scale = cov.matrix.norm() / m;  // RMS block norm
    if (scale == 0.0) return 0.0;

    double worst = 0.0;
    for (int cls = 0; cls < m; ++cls) {
        CMat mean = CMat::Zero(n, n);
        for (int b = 0; b < m; ++b) {
            const int a = (b + cls) % m;
            mean += cov.matrix.block(a * n, b * n, n, n);
        }
        mean /= static_cast<double>(m);
        for (int b = 0; b < m; ++b) {
            const int a = (b + cls) % m;
            const double dev =
                (cov.matrix.block(a * n, b * n, n, n) - mean).norm();
            worst = std::max(worst, dev / scale);
        }
    }
    return worst;
}

double block_graph_diag_residual(const EmpiricalCovariance& cov,
                                 const SpectralBasis& graph_basis, int n,
                                 int m) {
    if (cov.matrix.rows() != static_cast<Eigen::Index>(n) * m ||
        cov.matrix.cols() != cov.matrix.rows())
        throw DimensionError("covariance is not an (n*m) square matrix");
    if (graph_basis.size() != n)
        throw DimensionError("graph basis does not match block size");

    const std::vector<int> gcluster =
        cluster_values(graph_basis.values, kOrbitTol);
    const double negligible = 1e-12 * (cov.matrix.norm() / m + 1e-300);

    double worst = 0.0;
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            const CMat block = cov.matrix.block(a * n, b * n, n, n);
            const CMat rotated = graph_basis.vectors.adjoint() * block *
                                 graph_basis.vectors;
            const double total = rotated.norm();
            if (total <= negligible) continue;
            double off = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (i != j && gcluster[i] != gcluster[j])
                        off += std::norm(rotated(i, j));
            worst = std::max(worst, std::sqrt(off) / total);
        }
    }
    return worst;
}

double joint_graph_psd_fit(const JpsdVector& theta, const JointBasis& jb) {
    const int size = jb.joint_size();
    if (theta.size() != size)
        throw DimensionError("theta length does not match joint basis");

    Vec lambda_j(size);
    for (int j = 0; j < size; ++j) lambda_j[j] = jb.joint_eigenvalue(j);
    const std::vector<int> cluster = cluster_values(lambda_j, kOrbitTol);
    const int groups =
        *std::max_element(cluster.begin(), cluster.end()) + 1;

    Vec sums = Vec::Zero(groups);
    Eigen::VectorXi counts = Eigen::VectorXi::Zero(groups);
    for (int j = 0; j < size; ++j) {
        sums[cluster[j]] += theta[j];
        ++counts[cluster[j]];
    }
    const double global_mean = theta.mean();
    double within = 0.0, total = 0.0;
    for (int j = 0; j < size; ++j) {
        const double gm = sums[cluster[j]] / counts[cluster[j]];
        within += (theta[j] - gm) * (theta[j] - gm);
        total += (theta[j] - global_mean) * (theta[j] - global_mean);
    }
    if (total <= 0.0) return 0.0;
    return within / total;
}

void save_jpsd_csv(const JpsdVector& theta, const JointBasis& jb,
                   const std::string& path) {
    if (theta.size() != jb.joint_size())
        throw DimensionError("theta length does not match joint basis");
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write JPSD file: " + path);
    out << "j,ell,k,lambda_g,lambda_d,omega_g,omega_d,theta\n";
    char line[256];
    const int n = jb.n();
    for (int j = 0; j < jb.joint_size(); ++j) {
        const int ell = j % n;
        const int k = j / n;
        std::snprintf(line, sizeof line,
                      "%d,%d,%d,%.15g,%.15g,%.15g,%.15g,%.15g\n", j, ell, k,
                      jb.graph.values[ell], jb.time.values[k],
                      jb.graph.frequencies[ell], jb.time.frequencies[k],
                      theta[j]);
        out << line;
    }
}

JpsdVector load_jpsd_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open JPSD file: " + path);
    std::string line;
    if (!std::getline(in, line))
        throw ValidationError("empty JPSD file: " + path);
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto last_comma = line.find_last_of(',');
        if (last_comma == std::string::npos)
            throw ValidationError("bad JPSD row: " + line);
        values.push_back(std::stod(line.substr(last_comma + 1)));
    }
    if (values.empty()) throw ValidationError("JPSD file has no rows");
    return Eigen::Map<Vec>(values.data(), static_cast<Eigen::Index>(values.size()));
}

}  // namespace jtv
