#include "jtv/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "jtv/errors.hpp"

namespace jtv {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

SpectralBasis eigendecompose_symmetric(const Laplacian& L, double rho) {
    const Eigen::Index n = L.matrix.rows();
    if (L.matrix.cols() != n) throw DimensionError("Laplacian must be square");
    if (rho <= 0.0) throw ValidationError("rho must be positive");

    Eigen::SelfAdjointEigenSolver<Mat> solver(L.matrix);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("symmetric eigensolver failed");

    Mat vectors = solver.eigenvectors();
    Vec values = solver.eigenvalues();

    // Deterministic signs: first component of magnitude > 1e-8 made positive.
    for (Eigen::Index c = 0; c < n; ++c) {
        for (Eigen::Index r = 0; r < n; ++r) {
            if (std::abs(vectors(r, c)) > 1e-8) {
                if (vectors(r, c) < 0.0) vectors.col(c) *= -1.0;
                break;
            }
        }
    }
    // PSD up to roundoff; clamp the noise.
    for (Eigen::Index i = 0; i < n; ++i)
        if (values[i] < 0.0 && values[i] > -1e-8) values[i] = 0.0;

    SpectralBasis basis;
    basis.vectors = vectors.cast<std::complex<double>>();
    basis.values = values;
    basis.rho = rho;
    basis.frequencies = Vec(n);
    for (Eigen::Index i = 0; i < n; ++i)
        basis.frequencies[i] = kPi * std::sqrt(std::max(values[i], 0.0) / rho);
    return basis;
}

SpectralBasis graph_basis(const WeightedGraph& g) {
    validate_graph(g);
    if (!is_connected(g))
        throw DisconnectedGraphError("spectral analysis needs a connected graph");
    return eigendecompose_symmetric(build_laplacian(g), rho_bound(g));
}

SpectralBasis dft_basis(int m) {
    if (m < 1) throw SizeError("DFT size must be positive");
    SpectralBasis basis;
    basis.vectors = CMat(m, m);
    basis.values = Vec(m);
    basis.frequencies = Vec(m);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (int k = 0; k < m; ++k) {
        const double omega = 2.0 * kPi * k / m;
        basis.frequencies[k] = omega;
        basis.values[k] = 2.0 * (1.0 - std::cos(omega));
        for (int n = 0; n < m; ++n)
            basis.vectors(n, k) =
                scale * std::polar(1.0, static_cast<double>(n) * omega);
    }
    basis.rho = 4.0;  // sup of the cycle Laplacian spectrum
    return basis;
}

JointBasis make_joint_basis(const WeightedGraph& g, int m) {
    JointBasis jb;
    jb.graph = graph_basis(g);
    jb.time = dft_basis(m);
    return jb;
}

CVec gft(const SpectralBasis& basis, const CVec& x) {
    if (x.size() != basis.vectors.rows())
        throw DimensionError("signal length does not match basis");
    return basis.vectors.adjoint() * x;
}

CVec inverse_gft(const SpectralBasis& basis, const CVec& xhat) {
    if (xhat.size() != basis.vectors.rows())
        throw DimensionError("spectrum length does not match basis");
    return basis.vectors * xhat;
}

CMat jft(const JointBasis& jb, const CMat& X) {
    if (X.rows() != jb.n() || X.cols() != jb.m())
        throw DimensionError("signal dimensions do not match joint basis");
    return jb.graph.vectors.adjoint() * X * jb.time.vectors.conjugate();
}

CMat inverse_jft(const JointBasis& jb, const CMat& Xhat) {
    if (Xhat.rows() != jb.n() || Xhat.cols() != jb.m())
        throw DimensionError("spectrum dimensions do not match joint basis");
    return jb.graph.vectors * Xhat * jb.time.vectors.transpose();
}

CVec vectorize(const CMat& X) {
    return Eigen::Map<const CVec>(X.data(), X.size());
}

CMat unvectorize(const CVec& x, int n, int m) {
    if (x.size() != static_cast<Eigen::Index>(n) * m)
        throw DimensionError("vector length is not n*m");
    return Eigen::Map<const CMat>(x.data(), n, m);
}

}  // namespace jtv
