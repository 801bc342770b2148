#pragma once

#include <map>
#include <string>

#include "normaloid/config.hpp"
#include "normaloid/matrix.hpp"

namespace normaloid {

struct TransformResult {
  double s = 1.0;
  ComplexMatrix matrix;  // U |T|^s
  // "polar_q":       |T*|^s vs U |T|^s U*
  // "modulus_side":  X*X vs |T|^{2s}
  // "adjoint_side":  XX* vs |T*|^{2s}
  // "alt_form":      U |T|^s vs T |T|^{s-1}      (s >= 1)
  // "trans_equiv":   see trans_equiv_residual     (s >= 1)
  std::map<std::string, double> residuals;
};

/// U |T|^s with T = U|T| the polar decomposition. Throws InvalidParameter for s <= 0.
TransformResult generalized_transform(const ComplexMatrix& t, double s,
                                      const ToleranceConfig& cfg = {});

/// ||T|T|^a - |T*|^a T|| / ||T||^{1+a}.
double fundamental_identity_residual(const ComplexMatrix& t, double alpha,
                                     const ToleranceConfig& cfg = {});

/// Largest pairwise gap between (U|T|^s)^2, (T|T|^{s-1})^2 and
/// |T*|^{s-1} T^2 |T|^{s-1}, over ||T||^{2s}. Needs s >= 1.
double trans_equiv_residual(const ComplexMatrix& t, double s, const ToleranceConfig& cfg = {});

struct PowerInequalityResult {
  bool decision = false;
  double margin = 0.0;  // min eigenvalue / (max(lambda^{n^2}, 1) ||T||^{2n})
};

/// lambda^{n^2} T*^n T^n - T^n T*^n >= 0 for binormal T with TT* <= lambda T*T.
/// Throws NotBinormal or PremiseViolated when the hypotheses fail.
PowerInequalityResult power_inequality_check(const ComplexMatrix& t, double lambda, int n,
                                             const ToleranceConfig& cfg = {});

/// lambda^k (T*T)^k - (TT*)^k >= 0, the intermediate step for commuting
/// T*T and TT*. Returns the normalized margin.
double lambda_power_margin(const ComplexMatrix& t, double lambda, int k,
                           const ToleranceConfig& cfg = {});

struct HolderMcCarthyResult {
  bool decision = false;
  double gap = 0.0;  // signed so that >= 0 means the inequality holds, over ||A||^alpha
  double lhs = 0.0;  // <A^alpha x, x>
  double rhs = 0.0;  // <A x, x>^alpha
};

/// <A^a x, x> >= <A x, x>^a for a > 1 and <= for 0 < a <= 1.
/// Throws NotPositive (A not PSD) or NotUnit (|x| != 1).
HolderMcCarthyResult holder_mccarthy_check(const ComplexMatrix& a, const ComplexVector& x,
                                           double alpha, const ToleranceConfig& cfg = {});

/// ||V*^n V^n - (V*V)^n|| / ||V||^{2n}.
double power_moment_residual(const ComplexMatrix& v, int n);

}  // namespace normaloid
