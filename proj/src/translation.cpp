#include "jtv/translation.hpp"

#include <cmath>

#include "jtv/errors.hpp"

namespace jtv {

namespace {

CVec phase_vector(const Vec& frequencies, int shift) {
    CVec phase(frequencies.size());
    for (Eigen::Index i = 0; i < frequencies.size(); ++i)
        phase[i] = std::polar(1.0, -static_cast<double>(shift) * frequencies[i]);
    return phase;
}

}  // namespace

PhaseShift time_phase(const SpectralBasis& time_basis, int upsilon) {
    return {ShiftDomain::time, upsilon, 0,
            phase_vector(time_basis.frequencies, upsilon)};
}

PhaseShift graph_phase(const SpectralBasis& graph_basis, int theta) {
    return {ShiftDomain::graph, 0, theta,
            phase_vector(graph_basis.frequencies, theta)};
}

PhaseShift joint_phase(const JointBasis& jb, int upsilon, int theta) {
    const int n = jb.n();
    const int m = jb.m();
    PhaseShift shift{ShiftDomain::joint, upsilon, theta, CVec(n * m)};
    for (int k = 0; k < m; ++k) {
        const double time_part = upsilon * jb.time.frequencies[k];
        for (int ell = 0; ell < n; ++ell)
            shift.phase[ell + k * n] = std::polar(
                1.0, -(theta * jb.graph.frequencies[ell] + time_part));
    }
    return shift;
}

CVec time_shift(const CVec& x, int upsilon) {
    const Eigen::Index m = x.size();
    if (m == 0) return x;
    Eigen::Index s = upsilon % m;
    if (s < 0) s += m;
    CVec y(m);
    for (Eigen::Index i = 0; i < m; ++i) y[(i + s) % m] = x[i];
    return y;
}

CVec graph_translate(const SpectralBasis& basis, const CVec& x, int theta) {
    if (x.size() != basis.vectors.rows())
        throw DimensionError("signal length does not match basis");
    const CVec phase = phase_vector(basis.frequencies, theta);
    return basis.vectors * (phase.asDiagonal() * (basis.vectors.adjoint() * x));
}

CMat joint_translate(const JointBasis& jb, const CMat& X, int upsilon,
                     int theta) {
    CMat Xhat = jft(jb, X);
    const CVec pg = phase_vector(jb.graph.frequencies, theta);
    const CVec pd = phase_vector(jb.time.frequencies, upsilon);
    Xhat = pg.asDiagonal() * Xhat * pd.asDiagonal();
    return inverse_jft(jb, Xhat);
}

}  // namespace jtv
