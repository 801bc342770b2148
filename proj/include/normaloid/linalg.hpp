#pragma once

#include <optional>
#include <vector>

#include "normaloid/config.hpp"
#include "normaloid/matrix.hpp"

namespace normaloid {

struct HermitianEigen {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // unitary, columns
};

/// Eigendecomposition of a Hermitian matrix. The input is symmetrized first;
/// an asymmetry above eq_rtol * max(||A||, reference_scale) is rejected with
/// NonHermitianInput. `reference_scale` lets callers pass the scale of the
/// operands a difference was formed from (e.g. ||T||^2 for T*T - TT*).
HermitianEigen hermitian_eig(const ComplexMatrix& a, const ToleranceConfig& cfg = {},
                             double reference_scale = 0.0);

/// All n eigenvalues (with multiplicity) via complex Schur form, sorted by
/// decreasing modulus.
std::vector<Complex> general_eigenvalues(const ComplexMatrix& t);

/// Singular values, descending.
RealVector singular_values(const ComplexMatrix& t);

double operator_norm(const ComplexMatrix& t);
double spectral_radius(const ComplexMatrix& t);

/// A^alpha for Hermitian positive semidefinite A and alpha > 0.
/// Eigenvalues below rank_tol * ||A|| are clamped to zero before powering;
/// eigenvalues below -psd_tol * ||A|| raise NotPositive.
ComplexMatrix psd_power(const ComplexMatrix& a, double alpha, const ToleranceConfig& cfg = {});

/// |T| = (T*T)^{1/2}.
ComplexMatrix modulus(const ComplexMatrix& t, const ToleranceConfig& cfg = {});

/// |T|^q = (T*T)^{q/2} from the SVD of T, singular values below
/// rank_tol * ||T|| dropped; q = 0 yields the identity.
ComplexMatrix modulus_power(const ComplexMatrix& t, double q, const ToleranceConfig& cfg = {});

/// |T*|^q = (TT*)^{q/2}; q = 0 yields the identity.
ComplexMatrix adjoint_modulus_power(const ComplexMatrix& t, double q,
                                    const ToleranceConfig& cfg = {});

/// T = U P with U a partial isometry, P = |T| and N(U) = N(P).
struct PolarDecomposition {
  ComplexMatrix U;
  ComplexMatrix P;
};

PolarDecomposition polar_decompose(const ComplexMatrix& t, const ToleranceConfig& cfg = {});

struct PsdDecision {
  bool member = false;
  double margin = 0.0;          // min eigenvalue / scale
  double min_eigenvalue = 0.0;  // raw
  ComplexVector witness;        // eigenvector of the min eigenvalue
};

/// Positive-semidefiniteness with a signed margin. `scale` is the
/// normalization of the margin; it defaults to ||M|| and should be passed
/// explicitly when M is a difference of larger operators.
PsdDecision is_psd(const ComplexMatrix& m, const ToleranceConfig& cfg = {},
                   std::optional<double> scale = std::nullopt);

/// Numerical rank: singular values above rank_tol * sigma_max.
int rank(const ComplexMatrix& t, const ToleranceConfig& cfg = {});

/// Orthogonal projector onto N(T).
ComplexMatrix kernel_projector(const ComplexMatrix& t, const ToleranceConfig& cfg = {});

/// Orthogonal projector onto R(T).
ComplexMatrix range_projector(const ComplexMatrix& t, const ToleranceConfig& cfg = {});

/// Orthonormal basis (columns) of N(T), using rank_tol * reference_norm as the
/// cutoff. A reference_norm of 0 means sigma_max(T).
ComplexMatrix kernel_basis(const ComplexMatrix& t, const ToleranceConfig& cfg = {},
                           double reference_norm = 0.0);

}  // namespace normaloid
