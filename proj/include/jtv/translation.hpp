#ifndef JTV_TRANSLATION_HPP
#define JTV_TRANSLATION_HPP

#include "jtv/spectral.hpp"

namespace jtv {

enum class ShiftDomain { time, graph, joint };

/// Unit-modulus phase vector exp(-i xi) over a domain's frequency index.
/// For the joint domain, entry j carries
/// xi = theta * w_G[ell] + upsilon * w_D[k] with j = ell + k*N.
struct PhaseShift {
    ShiftDomain domain = ShiftDomain::joint;
    int upsilon = 0;
    int theta = 0;
    CVec phase;
};

PhaseShift time_phase(const SpectralBasis& time_basis, int upsilon);
PhaseShift graph_phase(const SpectralBasis& graph_basis, int theta);
PhaseShift joint_phase(const JointBasis& jb, int upsilon, int theta);

/// Right-circular shift by upsilon samples (negative upsilon shifts left);
/// plain index rotation, no transform involved.
CVec time_shift(const CVec& x, int upsilon);

/// Isometric graph translation Phi diag(exp(-i theta w)) Phi^* x. Output is
/// complex in general even for real input.
CVec graph_translate(const SpectralBasis& basis, const CVec& x, int theta);

/// (upsilon, theta)-translation T_G^theta X (T_D^T)^upsilon, applied
/// spectrally (diagonal phase multiply between JFT and IJFT). Negative
/// shifts apply the unitary inverse.
CMat joint_translate(const JointBasis& jb, const CMat& X, int upsilon,
                     int theta);

}  // namespace jtv

#endif
