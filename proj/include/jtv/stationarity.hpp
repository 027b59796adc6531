#ifndef JTV_STATIONARITY_HPP
#define JTV_STATIONARITY_HPP

#include <vector>

#include "jtv/filtering.hpp"
#include "jtv/rng.hpp"
#include "jtv/spectral.hpp"

namespace jtv {

/// Joint power spectral density: length-NM nonnegative vector indexed by
/// j = ell + k*N.
using JpsdVector = Eigen::VectorXd;

/// Dense NM x NM covariance; only constructed at tiny sizes (diagnostic
/// oracles). Production-size stationarity checks go through the JPSD
/// estimators instead.
struct EmpiricalCovariance {
    CMat matrix;
    int sample_count = 0;
};

struct JwssSynthesis {
    std::vector<CMat> realizations;
    JpsdVector true_jpsd;  // |H_hat|^2
};

/// Each realization is the filter output for fresh white standard-normal
/// N x M noise; realizations are complex in general. When real_valued is
/// set the spectral response is conjugate-symmetrized over k <-> M-k first,
/// which makes the filter map real noise to real signals.
JwssSynthesis synthesize_jwss(const JointFilterSpec& spec,
                              const JointBasis& jb, int q_realizations,
                              Rng rng, bool real_valued = false);

/// Phi_J diag(theta) Phi_J^*, materialized (tiny sizes only, NM <= 4096).
CMat analytic_covariance(const JpsdVector& theta, const JointBasis& jb);

/// Plain zero-mean sample average (1/Q) sum x x^*.
EmpiricalCovariance sample_covariance(const std::vector<CMat>& realizations);

/// ||offdiag(Phi_J^* R Phi_J)||_F / ||Phi_J^* R Phi_J||_F, where entries
/// coupling coordinates with identical (lambda_G, lambda_D) pairs are not
/// counted as off-diagonal (eigenvectors within a repeated eigenvalue are
/// not canonical). Near 0 certifies JWSS in the second-order sense.
double diagonalization_residual(const EmpiricalCovariance& cov,
                                const JointBasis& jb);

/// Partitions R into an m x m grid of n x n blocks and measures, over the
/// circulant classes (a - b) mod m, the worst deviation of a block from its
/// class mean, relative to the RMS block norm. Near 0 certifies MTWSS.
double block_circulant_residual(const EmpiricalCovariance& cov, int n, int m);

/// Max over blocks of the orbit-projected off-diagonal fraction of
/// Phi_G^* Xi_(a,b) Phi_G. Near 0 certifies MVWSS.
double block_graph_diag_residual(const EmpiricalCovariance& cov,
                                 const SpectralBasis& graph_basis, int n,
                                 int m);

/// Groups theta by the joint eigenvalue lambda_J (1e-9 clustering) and
/// returns within-group variance / total variance. Near 0 means the JPSD is
/// a univariate function of lambda_J, i.e. the process is also stationary
/// on the joint graph; large values witness that time-vertex JWSS is
/// strictly more general.
double joint_graph_psd_fit(const JpsdVector& theta, const JointBasis& jb);

/// JPSD CSV files with columns
/// j, ell, k, lambda_g, lambda_d, omega_g, omega_d, theta.
void save_jpsd_csv(const JpsdVector& theta, const JointBasis& jb,
                   const std::string& path);
JpsdVector load_jpsd_csv(const std::string& path);

}  // namespace jtv

#endif
