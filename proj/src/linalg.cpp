#include "normaloid/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "normaloid/errors.hpp"

namespace normaloid {

namespace {

using Svd = Eigen::JacobiSVD<ComplexMatrix>;

Svd full_svd(const ComplexMatrix& t) {
  require_valid(t);
  return Svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

int count_above(const RealVector& sigma, double cutoff) {
  int r = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) > cutoff) ++r;
  return r;
}

int numerical_rank(const RealVector& sigma, double rank_tol) {
  if (sigma.size() == 0 || sigma(0) <= 0.0) return 0;
  return count_above(sigma, rank_tol * sigma(0));
}

}  // namespace

HermitianEigen hermitian_eig(const ComplexMatrix& a, const ToleranceConfig& cfg,
                             double reference_scale) {
  require_valid(a);
  const double scale = std::max({a.norm(), reference_scale, kAbsoluteFloor});
  const double asymmetry = (a - a.adjoint()).norm();
  if (asymmetry > cfg.eq_rtol * scale) {
    throw NonHermitianInput("matrix is not Hermitian within tolerance (asymmetry " +
                            std::to_string(asymmetry / scale) + ")");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(a));
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<Complex> general_eigenvalues(const ComplexMatrix& t) {
  require_valid(t);
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(t, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("Schur iteration did not converge");
  }
  const auto& values = solver.eigenvalues();
  std::vector<Complex> out(values.data(), values.data() + values.size());
  std::stable_sort(out.begin(), out.end(),
                   [](Complex x, Complex y) { return std::abs(x) > std::abs(y); });
  return out;
}

RealVector singular_values(const ComplexMatrix& t) {
  require_valid(t);
  return Svd(t).singularValues();
}

double operator_norm(const ComplexMatrix& t) { return singular_values(t)(0); }

double spectral_radius(const ComplexMatrix& t) {
  const auto values = general_eigenvalues(t);
  return std::abs(values.front());
}

ComplexMatrix psd_power(const ComplexMatrix& a, double alpha, const ToleranceConfig& cfg) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidParameter("psd_power exponent must be positive and finite");
  }
  const HermitianEigen eig = hermitian_eig(a, cfg);
  const double norm = eig.eigenvalues.cwiseAbs().maxCoeff();
  if (eig.eigenvalues(0) < -cfg.psd_tol * norm) {
    throw NotPositive("matrix is not positive semidefinite (min eigenvalue " +
                      std::to_string(eig.eigenvalues(0)) + ")");
  }
  const double cutoff = cfg.rank_tol * norm;
  RealVector powered(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < powered.size(); ++i) {
    const double lambda = eig.eigenvalues(i);
    powered(i) = lambda <= cutoff ? 0.0 : std::pow(lambda, alpha);
  }
  const ComplexMatrix& q = eig.eigenvectors;
  return hermitian_part(q * powered.cast<Complex>().asDiagonal() * q.adjoint());
}

ComplexMatrix modulus(const ComplexMatrix& t, const ToleranceConfig& cfg) {
  return modulus_power(t, 1.0, cfg);
}

namespace {

// Singular vectors times sigma^q, with sigma below rank_tol * sigma_max set
// to zero. Working from the SVD of T avoids squaring before the cutoff.
ComplexMatrix singular_power(const ComplexMatrix& vectors, const RealVector& sigma, double q,
                             const ToleranceConfig& cfg) {
  const double cutoff = cfg.rank_tol * sigma(0);
  RealVector powered(sigma.size());
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    powered(i) = sigma(i) <= cutoff ? 0.0 : std::pow(sigma(i), q);
  }
  return hermitian_part(vectors * powered.cast<Complex>().asDiagonal() * vectors.adjoint());
}

}  // namespace

ComplexMatrix modulus_power(const ComplexMatrix& t, double q, const ToleranceConfig& cfg) {
  require_valid(t);
  if (q < 0.0) throw InvalidParameter("modulus exponent must be non-negative");
  if (q == 0.0) return ComplexMatrix::Identity(t.rows(), t.cols());
  const Svd svd = full_svd(t);
  return singular_power(svd.matrixV(), svd.singularValues(), q, cfg);
}

ComplexMatrix adjoint_modulus_power(const ComplexMatrix& t, double q,
                                    const ToleranceConfig& cfg) {
  require_valid(t);
  if (q < 0.0) throw InvalidParameter("modulus exponent must be non-negative");
  if (q == 0.0) return ComplexMatrix::Identity(t.rows(), t.cols());
  const Svd svd = full_svd(t);
  return singular_power(svd.matrixU(), svd.singularValues(), q, cfg);
}

PolarDecomposition polar_decompose(const ComplexMatrix& t, const ToleranceConfig& cfg) {
  const Svd svd = full_svd(t);
  const RealVector& sigma = svd.singularValues();
  const int r = numerical_rank(sigma, cfg.rank_tol);
  const auto w = svd.matrixU().leftCols(r);
  const auto v = svd.matrixV().leftCols(r);
  PolarDecomposition out;
  // T V_r S_r^{-1} equals W_r exactly; the SVD factor is used directly so that
  // U stays a partial isometry even for tiny retained singular values.
  out.U = w * v.adjoint();
  out.P = hermitian_part(v * sigma.head(r).cast<Complex>().asDiagonal() * v.adjoint());
  return out;
}

PsdDecision is_psd(const ComplexMatrix& m, const ToleranceConfig& cfg,
                   std::optional<double> scale) {
  const HermitianEigen eig = hermitian_eig(m, cfg, scale.value_or(0.0));
  const double reference = scale ? *scale : eig.eigenvalues.cwiseAbs().maxCoeff();
  const double denom = std::max(reference, kAbsoluteFloor);
  PsdDecision out;
  out.min_eigenvalue = eig.eigenvalues(0);
  out.margin = out.min_eigenvalue / denom;
  out.member = out.min_eigenvalue >= -cfg.psd_tol * denom;
  out.witness = eig.eigenvectors.col(0);
  return out;
}

int rank(const ComplexMatrix& t, const ToleranceConfig& cfg) {
  return numerical_rank(singular_values(t), cfg.rank_tol);
}

ComplexMatrix kernel_projector(const ComplexMatrix& t, const ToleranceConfig& cfg) {
  const ComplexMatrix basis = kernel_basis(t, cfg);
  return basis * basis.adjoint();
}

ComplexMatrix range_projector(const ComplexMatrix& t, const ToleranceConfig& cfg) {
  const Svd svd = full_svd(t);
  const int r = numerical_rank(svd.singularValues(), cfg.rank_tol);
  const auto w = svd.matrixU().leftCols(r);
  return w * w.adjoint();
}

ComplexMatrix kernel_basis(const ComplexMatrix& t, const ToleranceConfig& cfg,
                           double reference_norm) {
  const Svd svd = full_svd(t);
  const RealVector& sigma = svd.singularValues();
  const double reference = reference_norm > 0.0 ? reference_norm : sigma(0);
  const int r = reference > 0.0 ? count_above(sigma, cfg.rank_tol * reference) : 0;
  return svd.matrixV().rightCols(t.cols() - r);
}

}  // namespace normaloid
