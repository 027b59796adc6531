#ifndef JTV_JPSD_HPP
#define JTV_JPSD_HPP

#include <vector>

#include "jtv/graph.hpp"
#include "jtv/rng.hpp"
#include "jtv/spectral.hpp"
#include "jtv/stationarity.hpp"

namespace jtv {

/// Separable joint window: applied as (a_G a_D^T) ⊙ X.
struct JointWindow {
    Vec time_window;   // length M
    Vec graph_window;  // length N
};

struct WindowBank {
    std::vector<JointWindow> windows;  // size k1 * k2
    int k1 = 0;
    int k2 = 0;
    int window_len = 0;  // L
    int hop = 0;         // delta tau
};

/// K1 = floor((M - L)/hop) + 1 sliding Hamming tapers, each supported on
/// [k*hop, k*hop + L) and zero elsewhere.
std::vector<Vec> hamming_bank(int m, int window_len, int hop);

/// K2 heat-kernel windows Phi_G exp(-Lambda/bandwidth) Phi_G^* e_c, clamped
/// nonnegative and rescaled to max 1. Centers are approximately-equispaced
/// vertices from a farthest-point sweep on hop distance; the seed breaks
/// ties.
std::vector<Vec> graph_window_bank(const WeightedGraph& g,
                                   const SpectralBasis& basis, int k2,
                                   double bandwidth, Rng rng);

WindowBank make_bank(const std::vector<Vec>& time_windows,
                     const std::vector<Vec>& graph_windows, int window_len,
                     int hop);

/// Generalized Bartlett estimate: average of unwindowed joint periodograms,
/// theta[j] = (1/Q) sum_q |JFT(X_q)|^2[j]. Unbiased for JWSS input.
JpsdVector gbm(const std::vector<CMat>& realizations, const JointBasis& jb);

/// Generalized Welch estimate: average over all (realization, window) pairs
/// of windowed joint periodograms. Unless raw is set, the average is divided
/// entrywise by the bank's white-input response (the bank average of
/// ||A_w phi_j||^2), which calibrates a white process to exactly 1; raw
/// skips the division and is the literal windowed-periodogram average.
JpsdVector gwm(const std::vector<CMat>& realizations, const JointBasis& jb,
               const WindowBank& bank, bool raw = false);

/// Serial textbook implementations, kept as references for the OpenMP
/// kernels above; the parallel paths must match them bit for bit.
JpsdVector gbm_reference(const std::vector<CMat>& realizations,
                         const JointBasis& jb);
JpsdVector gwm_reference(const std::vector<CMat>& realizations,
                         const JointBasis& jb, const WindowBank& bank,
                         bool raw = false);

}  // namespace jtv

#endif
