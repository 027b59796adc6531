#ifndef JTV_FILTERING_HPP
#define JTV_FILTERING_HPP

#include <string>

#include "jtv/rng.hpp"
#include "jtv/spectral.hpp"

namespace jtv {

/// JFIR joint filter: an L1 x L2 grid of complex taps h_(p,q), p indexing
/// time-shift powers and q graph-shift powers. The filter acts as the
/// bivariate polynomial sum_{p,q} h_(p,q) T_J^(p,q).
struct JointFilterSpec {
    CMat taps;  // L1 rows (p), L2 columns (q)

    int l1() const { return static_cast<int>(taps.rows()); }
    int l2() const { return static_cast<int>(taps.cols()); }
};

/// Length-NM spectral multiplier in joint index order: entry j equals
/// sum_q sum_p h_(p,q) exp(-i(q w_G[ell] + p w_D[k])).
struct SpectralResponse {
    CVec response;
};

SpectralResponse spectral_response(const JointFilterSpec& spec,
                                   const JointBasis& jb);

/// y = IJFT(response ⊙ JFT(X)); the canonical application path.
CMat apply_filter(const JointFilterSpec& spec, const JointBasis& jb,
                  const CMat& X);
CMat apply_response(const SpectralResponse& resp, const JointBasis& jb,
                    const CMat& X);

/// Empirical translation-invariance certificate: max over random signals of
/// ||T(H X) - H(T X)||_F / ||X||_F for the given (upsilon, theta).
double commutation_residual(const JointFilterSpec& spec, const JointBasis& jb,
                            int upsilon, int theta, int trials, Rng rng);

/// Taps drawn i.i.d. standard complex normal, then scaled so the peak
/// spectral magnitude over the realized frequency pairs is 1.
JointFilterSpec random_filter(int l1, int l2, const JointBasis& jb, Rng rng);

/// JSON filter files: { "l1": int, "l2": int, "taps_re": [[...]],
/// "taps_im": [[...]] }, row p, column q.
JointFilterSpec load_filter_json(const std::string& path);
void save_filter_json(const JointFilterSpec& spec, const std::string& path);

}  // namespace jtv

#endif
