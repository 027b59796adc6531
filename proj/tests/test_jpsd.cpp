#include <doctest.h>

#include <cmath>
#include <complex>

#include "jtv/errors.hpp"
#include "jtv/jpsd.hpp"
#include "oracles.hpp"

using namespace jtv;

TEST_CASE("hamming bank geometry") {
    const auto bank = hamming_bank(128, 32, 16);
    CHECK(bank.size() == 7);  // floor(96/16) + 1
    for (const Vec& w : bank) {
        CHECK(w.size() == 128);
        CHECK(w.minCoeff() >= 0.0);
    }
    // Support of window k is [16k, 16k + 32).
    CHECK(bank[1].head(16).norm() == 0.0);
    CHECK(bank[1].segment(16, 32).minCoeff() > 0.0);
    CHECK(bank[1].tail(128 - 48).norm() == 0.0);

    const auto single = hamming_bank(8, 8, 4);
    CHECK(single.size() == 1);
    CHECK(single[0].minCoeff() > 0.0);

    // Hamming endpoints at L = 2: 0.54 - 0.46 cos(0) = 0.08 on both ends.
    const auto tiny = hamming_bank(6, 2, 2);
    CHECK(tiny[0][0] == doctest::Approx(0.08));
    CHECK(tiny[0][1] == doctest::Approx(0.08));

    CHECK_THROWS_AS(hamming_bank(8, 9, 4), GeometryError);
    CHECK_THROWS_AS(hamming_bank(8, 4, 0), GeometryError);
}

TEST_CASE("graph window bank") {
    const WeightedGraph k3 = complete_graph(3);
    const SpectralBasis basis = graph_basis(k3);

    const auto single = graph_window_bank(k3, basis, 1, basis.rho / 10.0, Rng(1));
    CHECK(single.size() == 1);
    const Vec& w = single[0];
    CHECK(w.minCoeff() >= 0.0);
    CHECK(w.maxCoeff() == doctest::Approx(1.0));
    // Symmetric under the two non-center vertices.
    int center = 0;
    w.maxCoeff(&center);
    std::vector<int> others;
    for (int v = 0; v < 3; ++v)
        if (v != center) others.push_back(v);
    CHECK(w[others[0]] == doctest::Approx(w[others[1]]));

    // Very large bandwidth: the kernel tends to 1 and the window to e_c.
    const auto sharp = graph_window_bank(k3, basis, 1, 1e12, Rng(1));
    int c = 0;
    sharp[0].maxCoeff(&c);
    CHECK(sharp[0][c] == doctest::Approx(1.0));
    for (int v = 0; v < 3; ++v)
        if (v != c) CHECK(sharp[0][v] < 1e-6);

    // Centers are distinct and seed-deterministic.
    const WeightedGraph ws = gen_watts_strogatz(30, 4, 0.2, Rng(2));
    const SpectralBasis wsb = graph_basis(ws);
    const auto bank_a = graph_window_bank(ws, wsb, 5, wsb.rho / 10.0, Rng(3));
    const auto bank_b = graph_window_bank(ws, wsb, 5, wsb.rho / 10.0, Rng(3));
    CHECK(bank_a.size() == 5);
    for (std::size_t i = 0; i < bank_a.size(); ++i)
        CHECK((bank_a[i] - bank_b[i]).norm() == 0.0);
}

TEST_CASE("gbm basics") {
    const JointBasis jb = make_joint_basis(complete_graph(3), 4);

    // A single joint Fourier mode has a one-hot periodogram.
    CVec e5 = CVec::Zero(12);
    e5[5] = 1.0;
    const CMat mode = inverse_jft(jb, unvectorize(e5, 3, 4));
    const JpsdVector theta = gbm({mode}, jb);
    CHECK(theta[5] == doctest::Approx(1.0));
    CHECK(theta.sum() == doctest::Approx(1.0));

    // Duplicating the realization list does not move the average.
    Rng rng(4);
    CMat x(3, 4);
    for (int c = 0; c < 4; ++c)
        for (int r = 0; r < 3; ++r) x(r, c) = rng.gaussian();
    const JpsdVector one = gbm({x}, jb);
    const JpsdVector two = gbm({x, x}, jb);
    CHECK((one - two).norm() < 1e-14);

    CHECK_THROWS_AS(gbm({}, jb), EmptyInputError);
}

TEST_CASE("gbm concentrates around a white spectrum") {
    const JointBasis jb = make_joint_basis(complete_graph(3), 4);
    Rng rng(5);
    std::vector<CMat> white;
    for (int q = 0; q < 5000; ++q) {
        CMat z(3, 4);
        for (int c = 0; c < 4; ++c)
            for (int r = 0; r < 3; ++r) z(r, c) = rng.gaussian();
        white.push_back(z);
    }
    const JpsdVector theta = gbm(white, jb);
    CHECK((theta - Vec::Ones(12)).cwiseAbs().maxCoeff() < 0.1);
}

TEST_CASE("gbm is unbiased per coordinate") {
    const JointBasis jb = make_joint_basis(complete_graph(3), 4);
    const JointFilterSpec spec = random_filter(2, 2, jb, Rng(6));
    const JwssSynthesis synth = synthesize_jwss(spec, jb, 5000, Rng(7));

    Vec mean = Vec::Zero(12), second = Vec::Zero(12);
    for (const CMat& x : synth.realizations) {
        const Vec p = vectorize(jft(jb, x)).cwiseAbs2();
        mean += p;
        second += p.cwiseProduct(p);
    }
    mean /= 5000.0;
    second /= 5000.0;
    for (int j = 0; j < 12; ++j) {
        const double stderr_j =
            std::sqrt(std::max(second[j] - mean[j] * mean[j], 0.0) / 5000.0);
        CHECK(std::abs(mean[j] - synth.true_jpsd[j]) <= 3.0 * stderr_j + 1e-12);
    }
}

TEST_CASE("gwm with the identity bank reduces to gbm") {
    const JointBasis jb = make_joint_basis(gen_erdos_renyi(6, 0.5, Rng(8)), 8);
    const JointFilterSpec spec = random_filter(3, 2, jb, Rng(9));
    const JwssSynthesis synth = synthesize_jwss(spec, jb, 3, Rng(10));

    WindowBank identity = make_bank({Vec::Ones(8)}, {Vec::Ones(6)}, 8, 8);
    const JpsdVector welch = gwm(synth.realizations, jb, identity);
    const JpsdVector bartlett = gbm(synth.realizations, jb);
    CHECK((welch - bartlett).cwiseAbs().maxCoeff() <= 1e-12);

    const JpsdVector raw = gwm(synth.realizations, jb, identity, true);
    CHECK((raw - bartlett).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("gwm of a zero signal is zero and shapes are validated") {
    const WeightedGraph g = gen_erdos_renyi(5, 0.7, Rng(11));
    const JointBasis jb = make_joint_basis(g, 8);
    const WindowBank bank =
        make_bank(hamming_bank(8, 4, 2),
                  graph_window_bank(g, jb.graph, 2, jb.graph.rho / 10.0, Rng(12)),
                  4, 2);
    CHECK(gwm({CMat::Zero(5, 8)}, jb, bank).norm() == 0.0);

    CHECK_THROWS_AS(gwm({CMat::Zero(4, 8)}, jb, bank), DimensionError);
    WindowBank bad = bank;
    bad.windows[0].time_window = Vec::Ones(5);
    CHECK_THROWS_AS(gwm({CMat::Zero(5, 8)}, jb, bad), GeometryError);
}

TEST_CASE("separable windowing equals the Kronecker window matrix") {
    const JointBasis jb = make_joint_basis(complete_graph(3), 4);
    Rng rng(13);
    Vec ag(3), ad(4);
    for (int i = 0; i < 3; ++i) ag[i] = rng.uniform();
    for (int i = 0; i < 4; ++i) ad[i] = rng.uniform();
    CMat x(3, 4);
    for (int c = 0; c < 4; ++c)
        for (int r = 0; r < 3; ++r)
            x(r, c) = std::complex<double>(rng.gaussian(), rng.gaussian());

    const CMat windowed = ag.cast<std::complex<double>>().asDiagonal() * x *
                          ad.cast<std::complex<double>>().asDiagonal();
    const CMat aj = oracle::kron(CMat(ad.cast<std::complex<double>>().asDiagonal()),
                                 CMat(ag.cast<std::complex<double>>().asDiagonal()));
    CHECK((vectorize(windowed) - aj * vectorize(x)).norm() < 1e-12);
}

TEST_CASE("gwm beats gbm at Q=1 on average") {
    const WeightedGraph k3 = complete_graph(3);
    const JointBasis jb = make_joint_basis(k3, 8);
    const WindowBank bank =
        make_bank(hamming_bank(8, 4, 2),
                  graph_window_bank(k3, jb.graph, 2, jb.graph.rho / 10.0, Rng(14)),
                  4, 2);

    double gbm_nmse = 0.0, gwm_nmse = 0.0;
    for (int seed = 0; seed < 200; ++seed) {
        Rng rng(1000 + seed);
        const JointFilterSpec spec = random_filter(3, 2, jb, rng.fork(0));
        const JwssSynthesis synth = synthesize_jwss(spec, jb, 1, rng.fork(1));
        const double denom = synth.true_jpsd.squaredNorm();
        gbm_nmse +=
            (gbm(synth.realizations, jb) - synth.true_jpsd).squaredNorm() / denom;
        gwm_nmse +=
            (gwm(synth.realizations, jb, bank) - synth.true_jpsd).squaredNorm() /
            denom;
    }
    CHECK(gwm_nmse < gbm_nmse);
}

TEST_CASE("window gain keeps white spectra near one") {
    const WeightedGraph g = gen_erdos_renyi(12, 0.4, Rng(15));
    const JointBasis jb = make_joint_basis(g, 16);
    const WindowBank bank =
        make_bank(hamming_bank(16, 8, 4),
                  graph_window_bank(g, jb.graph, 3, jb.graph.rho / 10.0, Rng(16)),
                  8, 4);

    JointFilterSpec identity;
    identity.taps = CMat::Ones(1, 1);
    const JwssSynthesis synth = synthesize_jwss(identity, jb, 2000, Rng(17));
    const JpsdVector theta = gwm(synth.realizations, jb, bank);
    CHECK(theta.minCoeff() > 0.5);
    CHECK(theta.maxCoeff() < 2.0);
}
