#include <doctest.h>

#include <cmath>
#include <complex>

#include "jtv/errors.hpp"
#include "jtv/spectral.hpp"
#include "oracles.hpp"

using namespace jtv;

namespace {

CMat random_complex(int n, int m, Rng& rng) {
    CMat x(n, m);
    for (int c = 0; c < m; ++c)
        for (int r = 0; r < n; ++r)
            x(r, c) = std::complex<double>(rng.gaussian(), rng.gaussian());
    return x;
}

}  // namespace

TEST_CASE("eigendecomposition of known spectra") {
    const SpectralBasis k3 = graph_basis(complete_graph(3));
    CHECK(k3.values[0] == doctest::Approx(0.0));
    CHECK(k3.values[1] == doctest::Approx(3.0));
    CHECK(k3.values[2] == doctest::Approx(3.0));

    const SpectralBasis c4 = graph_basis(cycle_graph(4));
    const Eigen::Vector4d expected(0, 2, 2, 4);
    CHECK((c4.values - expected).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("basis invariants on a random graph") {
    const WeightedGraph g = gen_erdos_renyi(40, 0.2, Rng(3));
    const Laplacian lap = build_laplacian(g);
    const SpectralBasis basis = graph_basis(g);
    const int n = basis.size();

    CHECK((basis.vectors.adjoint() * basis.vectors - CMat::Identity(n, n))
              .norm() < 1e-9);
    CHECK(std::abs(basis.values[0]) < 1e-9);
    CHECK(std::is_sorted(basis.values.data(), basis.values.data() + n));

    // EVD round trip and per-column residuals.
    const CMat rebuilt = basis.vectors *
                         basis.values.cast<std::complex<double>>().asDiagonal() *
                         basis.vectors.adjoint();
    CHECK((rebuilt - lap.matrix.cast<std::complex<double>>()).norm() < 1e-8);
    for (int c = 0; c < n; ++c)
        CHECK((lap.matrix * basis.vectors.col(c).real() -
               basis.values[c] * basis.vectors.col(c).real())
                  .norm() < 1e-8);

    // Deterministic sign convention.
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r) {
            if (std::abs(basis.vectors(r, c)) > 1e-8) {
                CHECK(basis.vectors(r, c).real() > 0.0);
                break;
            }
        }
    }
    CHECK_THROWS_AS(graph_basis(WeightedGraph{
                        2, Eigen::MatrixXd::Zero(2, 2), {}}),
                    DisconnectedGraphError);
}

TEST_CASE("dft basis closed form") {
    const SpectralBasis one = dft_basis(1);
    CHECK(one.vectors(0, 0) == std::complex<double>(1.0, 0.0));

    const SpectralBasis four = dft_basis(4);
    // Entry [2,2] (1-based) is exp(i pi/2)/2 = i/2.
    CHECK(std::abs(four.vectors(1, 1) - std::complex<double>(0.0, 0.5)) <
          1e-15);
    CHECK((four.vectors * four.vectors.adjoint() - CMat::Identity(4, 4))
              .norm() < 1e-10);

    // Eigenvalues stay in DFT order: 2(1-cos w_k), non-monotone.
    for (int k = 0; k < 4; ++k)
        CHECK(four.values[k] ==
              doctest::Approx(2.0 * (1.0 - std::cos(2.0 * M_PI * k / 4))));
    CHECK(four.values[1] == doctest::Approx(four.values[3]));
}

TEST_CASE("gft basics") {
    const SpectralBasis basis = graph_basis(gen_erdos_renyi(12, 0.4, Rng(4)));
    const int n = basis.size();

    const CVec dc = gft(basis, CVec::Ones(n));
    CHECK(std::abs(dc[0] - std::sqrt(static_cast<double>(n))) < 1e-10);
    CHECK(dc.tail(n - 1).norm() < 1e-10);

    const CVec mode = gft(basis, basis.vectors.col(3));
    CHECK(std::abs(mode[3] - 1.0) < 1e-10);
    CHECK((mode - CVec::Unit(n, 3)).norm() < 1e-10);

    Rng rng(8);
    CMat xs = random_complex(n, 1, rng);
    const CVec x = xs.col(0);
    CHECK(std::abs(gft(basis, x).norm() - x.norm()) < 1e-10);
    CHECK((inverse_gft(basis, gft(basis, x)) - x).norm() < 1e-10);
    CHECK_THROWS_AS(gft(basis, CVec::Ones(n + 1)), DimensionError);
}

TEST_CASE("jft dc mode, round trip and Parseval") {
    const JointBasis jb = make_joint_basis(gen_erdos_renyi(7, 0.5, Rng(2)), 6);

    const CMat dc = jft(jb, CMat::Ones(7, 6));
    CHECK(std::abs(dc(0, 0) - std::sqrt(42.0)) < 1e-9);
    CHECK((dc.cwiseAbs().sum() - std::abs(dc(0, 0))) < 1e-9);

    Rng rng(5);
    const CMat x = random_complex(7, 6, rng);
    CHECK((inverse_jft(jb, jft(jb, x)) - x).norm() < 1e-9);
    CHECK((jft(jb, inverse_jft(jb, x)) - x).norm() < 1e-9);
    CHECK(std::abs(jft(jb, x).norm() - x.norm()) < 1e-9);
    CHECK_THROWS_AS(jft(jb, CMat::Ones(6, 7)), DimensionError);

    const CMat zero_spectrum = CMat::Zero(7, 6);
    CHECK(inverse_jft(jb, zero_spectrum).norm() == 0.0);
}

TEST_CASE("jft equals the explicit Kronecker transform at tiny size") {
    const JointBasis jb = make_joint_basis(complete_graph(3), 4);
    const CMat phi_j = oracle::joint_fourier_matrix(jb);

    Rng rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        const CMat x = random_complex(3, 4, rng);
        const CVec via_product = vectorize(jft(jb, x));
        const CVec via_kron = phi_j.adjoint() * vectorize(x);
        CHECK((via_product - via_kron).norm() < 1e-10);
    }

    // phi_{J,0} is the constant vector.
    const CVec first = phi_j.col(0);
    CHECK((first.array() - std::complex<double>(1.0 / std::sqrt(12.0), 0.0))
              .matrix()
              .norm() < 1e-9);
}

TEST_CASE("joint eigenvalue identity and index bijection") {
    const JointBasis jb = make_joint_basis(gen_erdos_renyi(9, 0.4, Rng(6)), 11);
    Rng rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        const int ell = rng.uniform_int(0, 8);
        const int k = rng.uniform_int(0, 10);
        const int j = ell + k * 9;
        CHECK(jb.joint_eigenvalue(j) ==
              jb.graph.values[ell] + jb.time.values[k]);
    }
}
