#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "normaloid/config.hpp"
#include "normaloid/kernels.hpp"
#include "normaloid/matrix.hpp"

// Decision procedures for absolute-(p,r)-paranormality and paranormality.
//
// Both inequalities reduce to the same scalar problem on the unit sphere:
// minimize f(x) = <A x, x> - <B x, x>^e with A, B positive semidefinite and
// e >= 1. For absolute-(p,r)-paranormality A = |T*|^r |T|^{2p} |T*|^r,
// B = |T*|^{2r} and e = (p+r)/r; minimizing the operator pencil
//   r |T*|^r |T|^{2p} |T*|^r - (p+r) lambda^p |T*|^{2r} + p lambda^{p+r} I
// over lambda at a fixed x gives r f(x) at lambda = <B x, x>^{1/r}, so the
// pencil is PSD for every lambda > 0 iff f >= 0 on the sphere. Paranormality
// is the case A = T*^2 T^2, B = T*T, e = 2 (pencil
// T*^2 T^2 - 2 lambda T*T + lambda^2 I).
//
// Every procedure works on T / ||T||, so margins are scale invariant.
namespace normaloid {

enum class PencilMethod { lambda_grid, sphere_opt, dense_oracle };

std::string_view to_string(PencilMethod method);

struct PencilCertificate {
  PencilMethod method = PencilMethod::sphere_opt;
  bool decision = true;
  double margin = 0.0;  // normalized; member iff margin >= -threshold
  double threshold = 0.0;
  bool marginal = false;
  std::optional<double> witness_lambda;  // in the units of the input T
  std::optional<ComplexVector> witness_vector;
  long evaluations = 0;
  bool converged = true;
  bool reduced_confidence = false;
};

/// f(x) = <A x, x> - <B x, x>^exponent on the unit sphere.
struct SphereProblem {
  ComplexMatrix A;
  ComplexMatrix B;
  double exponent = 1.0;
};

/// ||T|^p |T*|^r x||^r >= ||T*|^r x||^{p+r}, squared and raised to 2/r.
SphereProblem abs_pr_problem(const ComplexMatrix& t, double p, double r,
                             const ToleranceConfig& cfg = {});
/// ||T x||^2 <= ||T^2 x||.
SphereProblem paranormal_problem(const ComplexMatrix& t);
/// ||T x||^{k+1} <= ||T^{k+1} x||.
SphereProblem k_paranormal_problem(const ComplexMatrix& t, int k);
/// ||T x||^{k+1} <= || |T|^k T x||.
SphereProblem absolute_k_problem(const ComplexMatrix& t, double k, const ToleranceConfig& cfg = {});

/// Objective at x / ||x||; this is the value a witness re-evaluates to.
double sphere_objective(const SphereProblem& problem, const ComplexVector& x);

/// Projected-gradient descent with backtracking from cfg.sphere_restarts
/// quasi-random starts plus `extra_starts`. For n <= 4, a run whose best
/// restart hit the iteration cap is cross-checked with the dense oracle.
PencilCertificate minimize_on_sphere(const SphereProblem& problem, const ToleranceConfig& cfg,
                                     std::span<const ComplexVector> extra_starts = {});

inline constexpr std::size_t kDenseOracleSamples = 200000;

/// Minimum of f over `samples` quasi-random unit vectors (SIMD kernels).
PencilCertificate dense_oracle(const SphereProblem& problem, const ToleranceConfig& cfg,
                               std::size_t samples = kDenseOracleSamples,
                               kernels::Isa isa = kernels::detect_isa());

/// r |T*|^r |T|^{2p} |T*|^r - (p+r) lambda^p |T*|^{2r} + p lambda^{p+r} I.
ComplexMatrix pencil_matrix(const ComplexMatrix& t, double p, double r, double lambda,
                            const ToleranceConfig& cfg = {});

/// Log-spaced lambdas on [1e-6 ||T||^2, ||T||^2] (unit scale for T = 0).
std::vector<double> lambda_grid(double norm, int points);

struct PencilScanRow {
  double lambda;
  double min_eig;
};

std::vector<PencilScanRow> pencil_scan(const ComplexMatrix& t, double p, double r, int points,
                                       const ToleranceConfig& cfg = {});

/// "lambda,min_eig" header plus one row per point, 17 significant digits.
std::string pencil_scan_csv(const std::vector<PencilScanRow>& rows);

/// Authoritative decider: sphere minimization of the scalar reduction.
PencilCertificate check_abs_pr_sphere(const ComplexMatrix& t, double p, double r,
                                      const ToleranceConfig& cfg = {});

/// Refuter: min eigenvalue of the pencil over the lambda grid. A "true"
/// decision only means no grid point was negative.
PencilCertificate check_abs_pr_lambda_grid(const ComplexMatrix& t, double p, double r,
                                           const ToleranceConfig& cfg = {});

/// Grid scan followed by a sphere minimization seeded with the grid's worst
/// eigenvector; the sphere decides.
PencilCertificate check_abs_pr(const ComplexMatrix& t, double p, double r,
                               const ToleranceConfig& cfg = {});

/// Normalized inequality value a(x) - b(x)^{(p+r)/r} at a given vector.
double abs_pr_margin_at(const ComplexMatrix& t, double p, double r, const ComplexVector& x,
                        const ToleranceConfig& cfg = {});

/// Quadratic pencil on the lambda grid plus the per-vector reduction on the sphere.
PencilCertificate check_paranormal(const ComplexMatrix& t, const ToleranceConfig& cfg = {});

struct BinormalScalarResult {
  bool decision = true;
  double margin = 0.0;  // min(0, f - g) over joint eigenpairs with g > tol, normalized
  std::vector<std::pair<double, double>> pairs;  // (eigenvalue of T*T, of TT*), normalized
};

/// For binormal T: jointly diagonalize T*T and TT* and require f >= g on every
/// joint eigenpair with g > 0. Throws NotBinormal otherwise.
BinormalScalarResult binormal_scalar_check(const ComplexMatrix& t, double p, double r,
                                           const ToleranceConfig& cfg = {});

/// Knife-edge band: -10 * threshold < margin < -threshold / 10.
bool in_marginal_band(double margin, double threshold);

}  // namespace normaloid
