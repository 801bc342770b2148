#include "normaloid/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "normaloid/classes.hpp"
#include "normaloid/errors.hpp"
#include "normaloid/linalg.hpp"

namespace normaloid {

namespace {

double opnorm(const ComplexMatrix& m) { return operator_norm(m); }

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidParameter(std::string(name) + " must be positive and finite");
  }
}

}  // namespace

TransformResult generalized_transform(const ComplexMatrix& t, double s,
                                      const ToleranceConfig& cfg) {
  require_positive(s, "s");
  const double norm = opnorm(t);
  const PolarDecomposition polar = polar_decompose(t, cfg);
  const ComplexMatrix mod_s = modulus_power(t, s, cfg);

  TransformResult out;
  out.s = s;
  out.matrix = polar.U * mod_s;
  const ComplexMatrix& x = out.matrix;

  const ComplexMatrix adj_s = adjoint_modulus_power(t, s, cfg);
  out.residuals["polar_q"] =
      normalized(opnorm(adj_s - polar.U * mod_s * polar.U.adjoint()), norm, s);
  out.residuals["modulus_side"] =
      normalized(opnorm(x.adjoint() * x - modulus_power(t, 2.0 * s, cfg)), norm, 2.0 * s);
  out.residuals["adjoint_side"] =
      normalized(opnorm(x * x.adjoint() - adjoint_modulus_power(t, 2.0 * s, cfg)), norm, 2.0 * s);
  if (s >= 1.0) {
    out.residuals["alt_form"] =
        normalized(opnorm(x - t * modulus_power(t, s - 1.0, cfg)), norm, s);
    out.residuals["trans_equiv"] = trans_equiv_residual(t, s, cfg);
  }
  return out;
}

double fundamental_identity_residual(const ComplexMatrix& t, double alpha,
                                     const ToleranceConfig& cfg) {
  require_positive(alpha, "alpha");
  const double norm = opnorm(t);
  const ComplexMatrix d =
      t * modulus_power(t, alpha, cfg) - adjoint_modulus_power(t, alpha, cfg) * t;
  return normalized(opnorm(d), norm, 1.0 + alpha);
}

double trans_equiv_residual(const ComplexMatrix& t, double s, const ToleranceConfig& cfg) {
  if (!(s >= 1.0) || !std::isfinite(s)) throw InvalidParameter("s must be at least 1");
  const double norm = opnorm(t);
  const ComplexMatrix u = polar_decompose(t, cfg).U;
  const ComplexMatrix mod_s1 = modulus_power(t, s - 1.0, cfg);
  const ComplexMatrix a = u * modulus_power(t, s, cfg);
  const ComplexMatrix b = t * mod_s1;
  const ComplexMatrix x1 = a * a;
  const ComplexMatrix x2 = b * b;
  const ComplexMatrix x3 = adjoint_modulus_power(t, s - 1.0, cfg) * t * t * mod_s1;
  const double gap = std::max({opnorm(x1 - x2), opnorm(x1 - x3), opnorm(x2 - x3)});
  return normalized(gap, norm, 2.0 * s);
}

PowerInequalityResult power_inequality_check(const ComplexMatrix& t, double lambda, int n,
                                             const ToleranceConfig& cfg) {
  require_positive(lambda, "lambda");
  if (n < 1) throw InvalidParameter("n must be a positive integer");
  if (!is_binormal(t, cfg).member) throw NotBinormal("power inequality needs binormal T");
  if (lambda_power_margin(t, lambda, 1, cfg) < -cfg.psd_tol) {
    throw PremiseViolated("TT* <= lambda T*T does not hold");
  }
  const double norm = opnorm(t);
  const ComplexMatrix tn = matrix_power(t, n);
  const double weight = std::pow(lambda, static_cast<double>(n) * n);
  const ComplexMatrix m = weight * tn.adjoint() * tn - tn * tn.adjoint();
  const PsdDecision d =
      is_psd(m, cfg, std::max(weight, 1.0) * std::max(std::pow(norm, 2.0 * n), kAbsoluteFloor));
  return {d.member, d.margin};
}

double lambda_power_margin(const ComplexMatrix& t, double lambda, int k,
                           const ToleranceConfig& cfg) {
  require_positive(lambda, "lambda");
  if (k < 1) throw InvalidParameter("k must be a positive integer");
  const double norm = opnorm(t);
  const double weight = std::pow(lambda, k);
  const ComplexMatrix m = weight * matrix_power(t.adjoint() * t, k) -
                          matrix_power(t * t.adjoint(), k);
  const double scale = std::max(weight, 1.0) * std::max(std::pow(norm, 2.0 * k), kAbsoluteFloor);
  return is_psd(m, cfg, scale).margin;
}

HolderMcCarthyResult holder_mccarthy_check(const ComplexMatrix& a, const ComplexVector& x,
                                           double alpha, const ToleranceConfig& cfg) {
  require_positive(alpha, "alpha");
  require_valid(a);
  if (x.size() != a.rows()) throw InvalidParameter("vector length does not match the matrix");
  if (std::abs(x.norm() - 1.0) > cfg.eq_rtol) throw NotUnit("x must be a unit vector");
  ComplexMatrix powered;
  try {
    powered = psd_power(a, alpha, cfg);
  } catch (const NonHermitianInput& e) {
    throw NotPositive(e.what());
  }
  const double scale = std::pow(std::max(opnorm(a), kAbsoluteFloor), alpha);
  HolderMcCarthyResult out;
  out.lhs = x.dot(powered * x).real();
  out.rhs = std::pow(std::max(x.dot(a * x).real(), 0.0), alpha);
  out.gap = (alpha >= 1.0 ? out.lhs - out.rhs : out.rhs - out.lhs) / scale;
  out.decision = out.gap >= -cfg.psd_tol;
  return out;
}

double power_moment_residual(const ComplexMatrix& v, int n) {
  if (n < 1) throw InvalidParameter("n must be a positive integer");
  const double norm = opnorm(v);
  const ComplexMatrix vn = matrix_power(v, n);
  return normalized(opnorm(vn.adjoint() * vn - matrix_power(v.adjoint() * v, n)), norm, 2.0 * n);
}

}  // namespace normaloid
