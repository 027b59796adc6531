#ifndef JTV_SPECTRAL_HPP
#define JTV_SPECTRAL_HPP

#include <Eigen/Dense>
#include <complex>

#include "jtv/graph.hpp"

namespace jtv {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// Orthonormal spectral basis of one domain (graph or time cycle).
///
/// For a graph basis the eigenvalues are ascending with lambda_0 = 0 and the
/// reduced frequencies are pi*sqrt(lambda/rho). For the time basis the
/// columns are kept in DFT order k = 0..M-1 (frequencies 2*pi*k/M), so the
/// eigenvalues 2(1-cos w) are deliberately non-monotone: the joint index map
/// j = ell + k*N presumes DFT-order k.
struct SpectralBasis {
    CMat vectors;     // unitary, columns are the Fourier modes
    Vec values;       // Laplacian eigenvalues, in column order
    Vec frequencies;  // reduced angular frequencies, in column order
    double rho = 0.0; // eigenvalue upper bound behind the frequency map

    int size() const { return static_cast<int>(vectors.rows()); }
};

/// Graph basis + time basis; the joint basis Phi_D (x) Phi_G is never
/// materialized. Joint index j = ell + k*N, joint eigenvalue
/// lambda_J = lambda_G + lambda_D.
struct JointBasis {
    SpectralBasis graph;
    SpectralBasis time;

    int n() const { return graph.size(); }
    int m() const { return time.size(); }
    int joint_size() const { return n() * m(); }

    double joint_eigenvalue(int j) const {
        return graph.values[j % n()] + time.values[j / n()];
    }
};

/// EVD of a symmetric PSD matrix with deterministic eigenvector signs: in
/// each column the first component of magnitude > 1e-8 is made positive.
/// Eigenvalues come back ascending; tiny negative roundoff is clamped to 0.
SpectralBasis eigendecompose_symmetric(const Laplacian& L, double rho);

/// Convenience: Laplacian + rho_bound + EVD for a connected graph.
/// Rejects disconnected graphs.
SpectralBasis graph_basis(const WeightedGraph& g);

/// Unitary DFT synthesis matrix, Phi_D[n,k] = exp(i n w_k)/sqrt(M) with
/// w_k = 2*pi*k/M, eigenvalues 2(1-cos w_k) in DFT order.
SpectralBasis dft_basis(int m);

JointBasis make_joint_basis(const WeightedGraph& g, int m);

CVec gft(const SpectralBasis& basis, const CVec& x);
CVec inverse_gft(const SpectralBasis& basis, const CVec& xhat);

/// Joint Fourier transform of an N x M signal, computed as the two-sided
/// product Phi_G^* X conj(Phi_D); vec of the result equals Phi_J^* vec(X).
CMat jft(const JointBasis& jb, const CMat& X);
CMat inverse_jft(const JointBasis& jb, const CMat& Xhat);

/// vec / unvec between the N x M matrix form and the length-NM joint-index
/// form (column-major, so j = ell + k*N).
CVec vectorize(const CMat& X);
CMat unvectorize(const CVec& x, int n, int m);

}  // namespace jtv

#endif
