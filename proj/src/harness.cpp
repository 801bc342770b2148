#include "normaloid/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>

#include "normaloid/classes.hpp"
#include "normaloid/errors.hpp"
#include "normaloid/fixtures.hpp"
#include "normaloid/generators.hpp"
#include "normaloid/linalg.hpp"
#include "normaloid/pencil.hpp"
#include "normaloid/random.hpp"
#include "normaloid/transforms.hpp"

namespace normaloid {

namespace {

constexpr double kIdentityTol = 1e-8;    // universal identities
constexpr double kScalarPowerTol = 1e-8;  // T^n = lambda I
constexpr double kWitnessViolation = 1e-6;
constexpr double kSkipAlarm = 0.05;
constexpr double kNoMargin = std::numeric_limits<double>::infinity();
constexpr std::array<double, 3> kGrid{0.5, 1.0, 2.0};

struct TheoremName {
  TheoremId id;
  std::string_view name;
};

constexpr std::array<TheoremName, 14> kTheoremNames{{
    {TheoremId::SELF_ADJOINT_CHAR, "SELF_ADJOINT_CHAR"},
    {TheoremId::TWO_BY_TWO_NORMALOID, "TWO_BY_TWO_NORMALOID"},
    {TheoremId::SCALAR_ROOT, "SCALAR_ROOT"},
    {TheoremId::NTH_ROOT_NORMAL, "NTH_ROOT_NORMAL"},
    {TheoremId::BINORMAL_HYPONORMAL, "BINORMAL_HYPONORMAL"},
    {TheoremId::POWER_INEQUALITY, "POWER_INEQUALITY"},
    {TheoremId::MIXED_ADJOINT_POWER, "MIXED_ADJOINT_POWER"},
    {TheoremId::FINITE_DIM_COLLAPSE, "FINITE_DIM_COLLAPSE"},
    {TheoremId::PARTIAL_ISOMETRY_CHAR, "PARTIAL_ISOMETRY_CHAR"},
    {TheoremId::ASCENT_ONE, "ASCENT_ONE"},
    {TheoremId::ROOT_PARTIAL_ISOMETRY, "ROOT_PARTIAL_ISOMETRY"},
    {TheoremId::MONOTONICITY, "MONOTONICITY"},
    {TheoremId::FUNDAMENTAL_IDENTITY, "FUNDAMENTAL_IDENTITY"},
    {TheoremId::CHAIN_CONSISTENCY, "CHAIN_CONSISTENCY"},
}};

// ---------------------------------------------------------------------------
// Trial bookkeeping

enum class Outcome { pass, fail };

struct Trial {
  Outcome outcome = Outcome::pass;
  double margin = std::numeric_limits<double>::infinity();
  ComplexMatrix matrix;
  Json parameters = Json::object();
  std::string detail;

  explicit Trial(ComplexMatrix t) : matrix(std::move(t)) {}

  // Records a conclusion; the first failing one is kept as the detail.
  void require(bool ok, const std::string& what, double m = std::numeric_limits<double>::infinity()) {
    margin = std::min(margin, m);
    if (!ok && outcome != Outcome::fail) {
      outcome = Outcome::fail;
      detail = what;
    }
  }

  // A governing margin in the marginal band voids the trial, failed or not.
  void skip_if(bool m) { marginal = marginal || m; }

  bool marginal = false;
};

class Recorder {
 public:
  Recorder(PropertyResult& result) : result_(result) {}

  void control(const std::string& fixture_name, Trial t) {
    ++result_.controls;
    if (std::find(result_.fixtures.begin(), result_.fixtures.end(), fixture_name) ==
        result_.fixtures.end()) {
      result_.fixtures.push_back(fixture_name);
    }
    // Controls are never skipped: fixtures sit far from the boundary.
    record("fixture " + fixture_name, std::move(t));
  }

  void trial(int index, Trial t) {
    if (t.marginal) {
      ++result_.skipped;
      return;
    }
    record("trial " + std::to_string(index), std::move(t));
  }

 private:
  void record(std::string source, Trial t) {
    if (std::isfinite(t.margin)) result_.worst_margin = std::min(result_.worst_margin, t.margin);
    if (t.outcome != Outcome::fail) return;
    ++result_.failures;
    if (!result_.counterexample) {
      result_.counterexample =
          Counterexample{std::move(source), std::move(t.matrix), std::move(t.parameters),
                         std::move(t.detail)};
    }
  }

  PropertyResult& result_;
};

// ---------------------------------------------------------------------------
// Constructions used by several suites

double pick(Rng& rng, const std::array<double, 3>& values) {
  return values[static_cast<std::size_t>(rng.uniform_int(0, 2))];
}

ComplexMatrix normal_matrix(Rng& rng, int n, int zeros = 0, double scale = 1.0) {
  ComplexVector z(n);
  for (int i = 0; i < n; ++i) z(i) = i < n - zeros ? scale * rng.complex_normal() : Complex{};
  const ComplexMatrix w = random_unitary(rng, n);
  return w * z.asDiagonal() * w.adjoint();
}

ComplexMatrix self_adjoint_matrix(Rng& rng, int n, int zeros = 0) {
  ComplexVector x(n);
  for (int i = 0; i < n; ++i) x(i) = i < n - zeros ? rng.normal() : 0.0;
  const ComplexMatrix w = random_unitary(rng, n);
  return hermitian_part(w * x.asDiagonal() * w.adjoint());
}

// Random invertible S with condition number at most 50.
ComplexMatrix similarity(Rng& rng, int n) {
  for (;;) {
    ComplexMatrix s = ComplexMatrix::Identity(n, n) + 0.7 * random_gaussian(rng, n);
    const RealVector sigma = singular_values(s);
    if (sigma(n - 1) * 50.0 > sigma(0)) return s;
  }
}

// S diag(rho w^k_j) S^{-1} with w a primitive order-th root of unity, so
// T^order = rho^order I. Generically not normal.
ComplexMatrix similarity_root(Rng& rng, int n, int order, double rho) {
  ComplexVector mu(n);
  for (int j = 0; j < n; ++j) {
    const int k = rng.uniform_int(0, order - 1);
    const double angle = 2.0 * std::numbers::pi * k / order;
    mu(j) = rho * Complex(std::cos(angle), std::sin(angle));
  }
  const ComplexMatrix s = similarity(rng, n);
  return s * mu.asDiagonal() * s.inverse();
}

ComplexMatrix normal_root(Rng& rng, int n, int order, double rho) {
  ComplexVector mu(n);
  for (int j = 0; j < n; ++j) {
    const int k = rng.uniform_int(0, order - 1);
    const double angle = 2.0 * std::numbers::pi * k / order;
    mu(j) = rho * Complex(std::cos(angle), std::sin(angle));
  }
  const ComplexMatrix w = random_unitary(rng, n);
  return w * mu.asDiagonal() * w.adjoint();
}

ComplexMatrix nilpotent(Rng& rng, int n) {
  ComplexMatrix core = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) core(i, j) = rng.complex_normal();
  const ComplexMatrix w = random_unitary(rng, n);
  return w * core * w.adjoint();
}

// Pi D with D constant on each cycle of the permutation: binormal and normal,
// but not diagonal in the standard basis.
ComplexMatrix cycle_normal(Rng& rng, int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform_int(0, i)]);
  std::vector<double> d(n, -1.0);
  for (int start = 0; start < n; ++start) {
    if (d[start] >= 0.0) continue;
    const double value = rng.uniform(0.5, 2.0);
    for (int j = start; d[j] < 0.0; j = perm[j]) d[j] = value;
  }
  ComplexMatrix t = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    t(perm[j], j) = d[j] * Complex(std::cos(angle), std::sin(angle));
  }
  const ComplexMatrix w = random_unitary(rng, n);
  return w * t * w.adjoint();
}

// W (signed involutive permutation) D W* with D varying: the polar factor is
// self-adjoint while T is not.
ComplexMatrix self_adjoint_polar(Rng& rng, int n) {
  ComplexMatrix pi = ComplexMatrix::Zero(n, n);
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(idx[i], idx[rng.uniform_int(0, i)]);
  int j = 0;
  for (; j + 1 < n; j += 2) {
    const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    pi(idx[j], idx[j + 1]) = sign;
    pi(idx[j + 1], idx[j]) = sign;
  }
  if (j < n) pi(idx[j], idx[j]) = 1.0;
  ComplexVector d(n);
  for (int i = 0; i < n; ++i) d(i) = rng.uniform(0.5, 2.0);
  const ComplexMatrix w = random_unitary(rng, n);
  return w * pi * d.asDiagonal() * w.adjoint();
}

ComplexMatrix perturbed(Rng& rng, const ComplexMatrix& t, double eps) {
  const ComplexMatrix e = random_gaussian(rng, static_cast<int>(t.rows()));
  return t + eps * std::max(operator_norm(t), 1.0) * e / operator_norm(e);
}

// Gaussian matrix with some singular values set to zero.
ComplexMatrix rank_deficient(Rng& rng, int n, int zeros) {
  const ComplexMatrix g = random_gaussian(rng, n);
  Eigen::JacobiSVD<ComplexMatrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  RealVector sigma = svd.singularValues();
  for (int i = n - zeros; i < n; ++i) sigma(i) = 0.0;
  return svd.matrixU() * sigma.cast<Complex>().asDiagonal() * svd.matrixV().adjoint();
}

bool scalar_power(const ComplexMatrix& t, int n) {
  const ComplexMatrix tn = matrix_power(t, n);
  const auto m = t.rows();
  const Complex lambda = tn.trace() / static_cast<double>(m);
  const double residual = operator_norm(tn - lambda * ComplexMatrix::Identity(m, m));
  return normalized(residual, operator_norm(t), n) <= kScalarPowerTol;
}

Json pr_params(double p, double r) {
  Json j;
  j["p"] = p;
  j["r"] = r;
  return j;
}

// Every tested (p, r) refutes T with a replayable witness.
void require_abs_pr_refuted(Trial& t, const ComplexMatrix& m, const ToleranceConfig& cfg) {
  for (double p : kGrid) {
    for (double r : kGrid) {
      const ClassVerdict v = is_absolute_pr_paranormal(m, p, r, cfg);
      const std::string tag = "(" + format_double(p) + "," + format_double(r) + ")";
      t.require(!v.member, "absolute-" + tag + "-paranormal unexpectedly holds");
      if (v.witness_vector) {
        const double replay = abs_pr_margin_at(m, p, r, *v.witness_vector, cfg);
        t.require(replay <= -kWitnessViolation, "witness does not replay for " + tag);
      } else {
        t.require(false, "no witness for " + tag);
      }
    }
  }
}

using SuiteFn = void (*)(Recorder&, int, std::uint64_t, const ToleranceConfig&);

Rng trial_rng(std::uint64_t seed, TheoremId id, int i) {
  return Rng(derive_seed(seed, static_cast<std::uint64_t>(id) + 0x100,
                         static_cast<std::uint64_t>(i)));
}

// ---------------------------------------------------------------------------
// Suites

void suite_self_adjoint_char(Recorder& rec, int trials, std::uint64_t seed,
                             const ToleranceConfig& cfg) {
  {
    const Fixture& f = fixture("normaloid_self_adjoint_polar");
    Trial t(f.matrix);
    t.require(is_self_adjoint(polar_decompose(f.matrix, cfg).U, cfg).member,
              "polar factor should be self-adjoint");
    t.require(is_normaloid(f.matrix, cfg).member, "should be normaloid");
    t.require(!is_self_adjoint(f.matrix, cfg).member, "T should not be self-adjoint");
    require_abs_pr_refuted(t, f.matrix, cfg);
    rec.control(f.name, std::move(t));
  }
  for (int i = 0; i < trials; ++i) {
    Rng rng = trial_rng(seed, TheoremId::SELF_ADJOINT_CHAR, i);
    const int n = 2 + i % 3;
    ComplexMatrix m;
    switch (i % 4) {
      case 0: m = self_adjoint_matrix(rng, n, i % 8 == 0 ? 1 : 0); break;
      case 1: m = normal_matrix(rng, n); break;
      case 2: m = self_adjoint_polar(rng, n); break;
      default: m = random_gaussian(rng, n); break;
    }
    const double p = pick(rng, kGrid), r = pick(rng, kGrid);
    Trial t(m);
    t.parameters = pr_params(p, r);
    const ClassVerdict abs = is_absolute_pr_paranormal(m, p, r, cfg);
    const ClassVerdict u_sa = is_self_adjoint(polar_decompose(m, cfg).U, cfg);
    const ClassVerdict t_sa = is_self_adjoint(m, cfg);
    const bool pair = abs.member && u_sa.member;
    t.require(pair == t_sa.member,
              pair ? "abs-(p,r) with self-adjoint U but T not self-adjoint"
                   : "self-adjoint T fails abs-(p,r) or has non-self-adjoint U",
              pair ? t_sa.margin : std::numeric_limits<double>::infinity());
    t.skip_if(abs.marginal || u_sa.marginal || t_sa.marginal);
    rec.trial(i, std::move(t));
  }
}

void suite_two_by_two(Recorder& rec, int trials, std::uint64_t seed, const ToleranceConfig& cfg) {
  {
    const Fixture& f = fixture("posinormal_involution");
    Trial t(f.matrix);
    t.require(!is_normaloid(f.matrix, cfg).member && !is_normal(f.matrix, cfg).member,
              "2x2 fixture should be neither normaloid nor normal");
    rec.control(f.name, std::move(t));
  }
  for (int i = 0; i < trials; ++i) {
    Rng rng = trial_rng(seed, TheoremId::TWO_BY_TWO_NORMALOID, i);
    ComplexMatrix m;
    switch (i % 4) {
      case 0: m = random_gaussian(rng, 2); break;
      case 1: m = normal_matrix(rng, 2); break;
      case 2: {
        // Equal-modulus eigenvalues with a nonzero off-diagonal entry.
        const Complex a = rng.complex_normal();
        const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
        ComplexMatrix core(2, 2);
        core << a, rng.complex_normal(), 0.0, a * Complex(std::cos(angle), std::sin(angle));
        const ComplexMatrix w = random_unitary(rng, 2);
        m = w * core * w.adjoint();
        break;
      }
      default: m = perturbed(rng, normal_matrix(rng, 2), std::pow(10.0, rng.uniform(-2.0, -0.5))); break;
    }
    Trial t(m);
    const ClassVerdict nd = is_normaloid(m, cfg);
    const ClassVerdict nm = is_normal(m, cfg);
    t.require(nd.member == nm.member,
              nd.member ? "normaloid 2x2 matrix is not normal" : "normal matrix is not normaloid",
              nd.member ? nm.margin : nm.member ? nd.margin : kNoMargin);
    t.skip_if(nd.marginal || nm.marginal);
    rec.trial(i, std::move(t));
  }
}

void suite_scalar_root(Recorder& rec, int trials, std::uint64_t seed, const ToleranceConfig& cfg) {
  for (const char* name : {"nilpotent_2x2", "binormal_nilpotent_scaled"}) {
    const Fixture& f = fixture(name);
    Trial t(f.matrix);
    t.require(scalar_power(f.matrix, 2), "square should vanish");
    t.require(!is_normaloid(f.matrix, cfg).member, "nonzero nilpotent must not be normaloid");
    rec.control(f.name, std::move(t));
  }
  for (int i = 0; i < trials; ++i) {
    Rng rng = trial_rng(seed, TheoremId::SCALAR_ROOT, i);
    const int n = 2 + i % 3;
    const int order = 2 + (i / 3) % 3;
    const double rho = rng.uniform(0.5, 2.0);
    ComplexMatrix m;
    switch ((i / 9) % 4) {
      case 0: m = normal_root(rng, n, order, rho); break;
      case 1: m = similarity_root(rng, n, order, rho); break;
      case 2: m = nilpotent(rng, n); break;
      default: m = perturbed(rng, normal_root(rng, n, order, rho), 1e-3); break;
    }
    Trial t(m);
    Json params;
    params["n"] = order;
    t.parameters = params;
    const ClassVerdict nd = is_normaloid(m, cfg);
    if (nd.member && scalar_power(m, order)) {
      const ClassVerdict nm = is_normal(m, cfg);
      t.require(nm.member, "normaloid with scalar power is not normal", nm.margin);
      const ComplexMatrix tn = matrix_power(m, order);
      const double lambda = std::abs(tn.trace()) / static_cast<double>(n);
      if (lambda > 1e-8 * std::pow(operator_norm(m), order)) {
        const ClassVerdict u = is_unitary(m / std::pow(lambda, 1.0 / order), cfg);
        t.require(u.member, "normaloid root of a nonzero scalar is not a multiple of a unitary",
                  u.margin);
      } else {
        t.require(operator_norm(m) <= cfg.eq_rtol, "nilpotent normaloid is not zero");
      }
    }
    t.skip_if(nd.marginal);
    rec.trial(i, std::move(t));
  }
}

// Over matrices this is implied by FINITE_DIM_COLLAPSE (abs-(p,r) alone forces
// normality); the power hypothesis is still checked as stated.
void suite_nth_root_normal(Recorder& rec, int trials, std::uint64_t seed,
                           const ToleranceConfig& cfg) {
  {
    const Fixture& f = fixture("posinormal_involution");
    Trial t(f.matrix);
    t.require(is_normal(matrix_power(f.matrix, 2), cfg).member, "T^2 = I should be normal");
    t.require(!is_normal(f.matrix, cfg).member, "T should not be normal");
    require_abs_pr_refuted(t, f.matrix, cfg);
    rec.control(f.name, std::move(t));
  }
  for (int i = 0; i < trials; ++i) {
    Rng rng = trial_rng(seed, TheoremId::NTH_ROOT_NORMAL, i);
    const int n = 2 + i % 3;
    ComplexMatrix m;
    switch (i % 4) {
      case 0: m = normal_matrix(rng, n); break;
      case 1: m = similarity_root(rng, n, 2 + (i / 4) % 3, rng.uniform(0.5, 2.0)); break;
      case 2: m = random_gaussian(rng, n); break;
      default: m = random_binormal(rng, n); break;
    }
    const double p = pick(rng, kGrid), r = pick(rng, kGrid);
    Trial t(m);
    t.parameters = pr_params(p, r);
    const ClassVerdict abs = is_absolute_pr_paranormal(m, p, r, cfg);
    bool power_normal = false;
    bool marginal = abs.marginal;
    for (int k = 2; k <= 4; ++k) {
      const ClassVerdict v = is_normal(matrix_power(m, k), cfg);
      power_normal = power_normal || v.member;
      marginal = marginal || v.marginal;
    }
    if (abs.member && power_normal) {
      const ClassVerdict nm = is_normal(m, cfg);
      t.require(nm.member, "abs-(p,r) with a normal power is not normal", nm.margin);
      marginal = marginal || nm.marginal;
    }
    t.skip_if(marginal);
    rec.trial(i, std::move(t));
  }
}

void suite_binormal_hyponormal(Recorder& rec, int trials, std::uint64_t seed,
                               const ToleranceConfig& cfg) {
  {
    const Fixture& f = fixture("binormal_not_hyponormal");
    Trial t(f.matrix);
    t.require(is_binormal(f.matrix, cfg).member, "should be binormal");
    t.require(is_normaloid(f.matrix, cfg).member, "should be normaloid");
    t.require(!is_hyponormal(f.matrix, cfg).member, "should not be hyponormal");
    t.require(!binormal_scalar_check(f.matrix, 1.0, 1.0, cfg).decision,
              "scalar criterion should refute");
    require_abs_pr_refuted(t, f.matrix, cfg);
    rec.control(f.name, std::move(t));
  }
  for (int i = 0; i < trials; ++i) {
    Rng rng = trial_rng(seed, TheoremId::BINORMAL_HYPONORMAL, i);
    const int n = 2 + i % 3;
    ComplexMatrix m;
    switch (i % 3) {
      case 0: m = random_binormal(rng, n); break;
      case 1: m = random_binormal(rng, n, rng.uniform_int(0, n - 1)); break;
      default: m = cycle_normal(rng, n); break;
    }
    const double p = pick(rng, kGrid), r = pick(rng, kGrid);
    Trial t(m);
    t.parameters = pr_params(p, r);
    const ClassVerdict bn = is_binormal(m, cfg);
    t.require(bn.member, "generated matrix is not binormal", bn.margin);
    if (bn.member) {
      const ClassVerdict abs = is_absolute_pr_paranormal(m, p, r, cfg);
      const ClassVerdict hypo = is_hyponormal(m, cfg);
      const BinormalScalarResult scalar = binormal_scalar_check(m, p, r, cfg);
      if (abs.member) t.require(hypo.member, "binormal abs-(p,r) is not hyponormal", hypo.margin);
      t.require(scalar.decision == abs.member, "scalar criterion disagrees with the sphere");
      t.skip_if(abs.marginal || hypo.marginal || in_marginal_band(scalar.margin, cfg.psd_tol));
    }
    rec.trial(i, std::move(t));
  }
}

void suite_power_inequality(Recorder& rec, int trials, std::uint64_t seed,
                            const ToleranceConfig& cfg) {
  {
    const Fixture& f = fixture("posinormal_involution");
    Trial t(f.matrix);
    const ClassVerdict pn = is_posinormal(f.matrix, cfg);
    t.require(pn.member && pn.lambda_min.has_value(), "should be posinormal with lambda_min");
    if (pn.lambda_min) {
      for (int n = 1; n <= 4; ++n) {
        const auto res = power_inequality_check(f.matrix, *pn.lambda_min, n, cfg);
        t.require(res.decision, "power inequality fails for n = " + std::to_string(n), res.margin);
      }
    }
    bool threw = false;
    try {
      power_inequality_check(fixture("normaloid_self_adjoint_polar").matrix, 1.0, 2, cfg);
    } catch (const PremiseViolated&) {
      threw = true;
    }
    t.require(threw, "lambda = 1 premise should be rejected for a non-hyponormal matrix");
    bool not_binormal = false;
    try {
      power_inequality_check(from_rows(2, {1, 2, 3, 4}), 10.0, 2, cfg);
    } catch (const NotBinormal&) {
      not_binormal = true;
    }
    t.require(not_binormal, "non-binormal input should be rejected");
    rec.control(f.name, std::move(t));
  }
  for (int i = 0; i < trials; ++i) {
    Rng rng = trial_rng(seed, TheoremId::POWER_INEQUALITY, i);
    const int n = 2 + i % 3;
    const bool hypo_case = i % 2 == 1;
    const ComplexMatrix m = hypo_case ? cycle_normal(rng, n) : random_binormal(rng, n);
    Trial t(m);
    const ClassVerdict pn = is_posinormal(m, cfg);
    t.require(pn.member && pn.lambda_min.has_value(), "invertible binormal is not posinormal",
              pn.margin);
    if (!pn.lambda_min) {
      rec.trial(i, std::move(t));
      continue;
    }
    const double lambda = hypo_case ? 1.0 : *pn.lambda_min;
    Json params;
    params["lambda"] = lambda;
    t.parameters = params;
    for (int k = 1; k <= 4; ++k) {
      const double margin = lambda_power_margin(m, lambda, k, cfg);
      t.require(margin >= -cfg.psd_tol,
                "(TT*)^k <= lambda^k (T*T)^k fails for k = " + std::to_string(k), margin);
    }
    for (int k = 1; k <= 4; ++k) {
      const auto res = power_inequality_check(m, lambda, k, cfg);
      t.require(res.decision, "power inequality fails for n = " + std::to_string(k), res.margin);
      const ComplexMatrix tk = matrix_power(m, k);
      const ClassVerdict posi = is_posinormal(tk, cfg);
      t.require(posi.member, "T^n is not posinormal for n = " + std::to_string(k), posi.margin);
      if (hypo_case) {
        const ClassVerdict hypo = is_hyponormal(tk, cfg);
        t.require(hypo.member, "T^n is not hyponormal for n = " + std::to_string(k), hypo.margin);
        t.skip_if(hypo.marginal);
      }
    }
    if (!hypo_case && *pn.lambda_min > 1.05) {
      bool threw = false;
      try {
        power_inequality_check(m, 0.9 * *pn.lambda_min, 2, cfg);
      } catch (const PremiseViolated&) {
        threw = true;
      }
      t.require(threw, "premise below lambda_min was not rejected");
    }
    rec.trial(i, std::move(t));
  }
}

void suite_mixed_adjoint_power(Recorder& rec, int trials, std::uint64_t seed,
                               const ToleranceConfig& cfg) {
  {
    const Fixture& f = fixture("binormal_nilpotent_scaled");
    Trial t(f.matrix);
    const ComplexMatrix adj2 = matrix_power(f.matrix.adjoint(), 2);
    t.require(is_binormal(f.matrix, cfg).member, "should be binormal");
    t.require(is_absolute_pr_paranormal(adj2, 1.0, 1.0, cfg).member, "T*^2 = 0 qualifies");
    t.require(!is_normal(f.matrix, cfg).member, "should not be normal");
    require_abs_pr_refuted(t, f.matrix, cfg);
    rec.control(f.name, std::move(t));
  }
  for (int i = 0; i < trials; ++i) {
    Rng rng = trial_rng(seed, TheoremId::MIXED_ADJOINT_POWER, i);
    const int n = 2 + i % 3;
    ComplexMatrix m;
    switch (i % 3) {
      case 0: m = cycle_normal(rng, n); break;
      case 1: m = random_binormal(rng, n); break;
      default: m = random_binormal(rng, n, rng.uniform_int(0, n - 1)); break;
    }
    const double p1 = pick(rng, kGrid), r1 = pick(rng, kGrid);
    const double p2 = pick(rng, kGrid), r2 = pick(rng, kGrid);
    const int power = rng.uniform_int(1, 3);
    Trial t(m);
    Json params;
    params["p1"] = p1;
    params["r1"] = r1;
    params["p2"] = p2;
    params["r2"] = r2;
    params["n"] = power;
    t.parameters = params;
    const ClassVerdict bn = is_binormal(m, cfg);
    const ClassVerdict a1 = is_absolute_pr_paranormal(m, p1, r1, cfg);
    const ClassVerdict a2 =
        is_absolute_pr_paranormal(matrix_power(m.adjoint(), power), p2, r2, cfg);
    if (bn.member && a1.member && a2.member) {
      const ClassVerdict nm = is_normal(m, cfg);
      t.require(nm.member, "hypotheses hold but T is not normal", nm.margin);
      t.skip_if(nm.marginal);
    }
    t.skip_if(bn.marginal || a1.marginal || a2.marginal);
    rec.trial(i, std::move(t));
  }
}

ComplexMatrix collapse_sample(Rng& rng, int i, int n) {
  switch (i % 6) {
    case 0: return random_gaussian(rng, n);
    case 1: return normal_matrix(rng, n, i % 12 == 1 ? 1 : 0);
    case 2: return random_binormal(rng, n);
    case 3: {
      ComplexMatrix core = ComplexMatrix::Zero(n, n);
      const ComplexMatrix a = random_gaussian(rng, n - 1);
      const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
      core(0, 0) = operator_norm(a) * Complex(std::cos(angle), std::sin(angle));
      core.bottomRightCorner(n - 1, n - 1) = a;
      const ComplexMatrix w = random_unitary(rng, n);
      return w * core * w.adjoint();
    }
    case 4: {
      const int rank = rng.uniform_int(1, n - 1);
      const ComplexMatrix w1 = random_unitary(rng, n);
      const ComplexMatrix w2 = random_unitary(rng, n);
      return w1.leftCols(rank) * w2.leftCols(rank).adjoint();
    }
    default: return cycle_normal(rng, n);
  }
}

void suite_finite_dim_collapse(Recorder& rec, int trials, std::uint64_t seed,
                               const ToleranceConfig& cfg) {
  for (const char* name : {"normaloid_self_adjoint_polar", "partial_isometry_not_quasinormal",
                           "normaloid_square_partial_isometry"}) {
    const Fixture& f = fixture(name);
    Trial t(f.matrix);
    t.require(is_normaloid(f.matrix, cfg).member, "fixture should be normaloid");
    t.require(!is_normal(f.matrix, cfg).member, "fixture should not be normal");
    require_abs_pr_refuted(t, f.matrix, cfg);
    rec.control(f.name, std::move(t));
  }
  for (int i = 0; i < trials; ++i) {
    Rng rng = trial_rng(seed, TheoremId::FINITE_DIM_COLLAPSE, i);
    const int n = 2 + (i / 6) % 4;
    const ComplexMatrix m = collapse_sample(rng, i, n);
    const double p = pick(rng, kGrid), r = pick(rng, kGrid);
    Trial t(m);
    t.parameters = pr_params(p, r);
    const ClassVerdict abs = is_absolute_pr_paranormal(m, p, r, cfg);
    const ClassVerdict para = is_paranormal(m, cfg);
    const ClassVerdict nm = is_normal(m, cfg);
    t.require(abs.member == nm.member, "abs-(p,r) and normality disagree",
              abs.member ? nm.margin : nm.member ? abs.margin : kNoMargin);
    t.require(para.member == nm.member, "paranormality and normality disagree");
    t.skip_if(abs.marginal || para.marginal || nm.marginal);
    rec.trial(i, std::move(t));
  }
}

void suite_partial_isometry_char(Recorder& rec, int trials, std::uint64_t seed,
                                 const ToleranceConfig& cfg) {
  auto four_conditions = [&](Trial& t, const ComplexMatrix& v, double p, double r, bool expect) {
    const ClassVerdict pi = is_partial_isometry(v, cfg);
    t.require(pi.member, "input is not a partial isometry", pi.margin);
    const ClassVerdict qn = is_quasinormal(v, cfg);
    const ClassVerdict abs = is_absolute_pr_paranormal(v, p, r, cfg);
    const ComplexMatrix v2 = v * v;
    const ComplexMatrix gap = v2.adjoint() * v2 - v.adjoint() * v;
    const double eq_margin = -operator_norm(gap);
    const bool eq = eq_margin >= -cfg.eq_rtol;
    const PsdDecision ineq = is_psd(gap, cfg, 1.0);
    const bool agree = qn.member == abs.member && abs.member == eq && eq == ineq.member;
    t.require(agree, "the four characterizations disagree");
    if (expect) t.require(qn.member, "expected a quasinormal partial isometry", qn.margin);
    if (qn.member) {
      for (int k = 1; k <= v.rows(); ++k) {
        const double residual = power_moment_residual(v, k);
        t.require(residual <= kIdentityTol, "V*^n V^n != (V*V)^n for quasinormal V", -residual);
      }
    }
    t.skip_if(qn.marginal || abs.marginal || in_marginal_band(eq_margin, cfg.eq_rtol) ||
              in_marginal_band(ineq.margin, cfg.psd_tol));
  };

  {
    const Fixture& f = fixture("partial_isometry_not_quasinormal");
    Trial t(f.matrix);
    four_conditions(t, f.matrix, 1.0, 1.0, false);
    t.require(!is_quasinormal(f.matrix, cfg).member, "should not be quasinormal");
    rec.control(f.name, std::move(t));
  }
  for (int i = 0; i < trials; ++i) {
    Rng rng = trial_rng(seed, TheoremId::PARTIAL_ISOMETRY_CHAR, i);
    const int n = 2 + i % 4;
    const int rank = rng.uniform_int(0, n);
    ComplexMatrix v;
    bool quasinormal = false;
    switch (i % 3) {
      case 0: {
        const ComplexMatrix w1 = random_unitary(rng, n);
        const ComplexMatrix w2 = random_unitary(rng, n);
        v = w1.leftCols(rank) * w2.leftCols(rank).adjoint();
        break;
      }
      case 1: {
        ComplexMatrix core = ComplexMatrix::Zero(n, n);
        if (rank > 0) core.topLeftCorner(rank, rank) = random_unitary(rng, rank);
        const ComplexMatrix w = random_unitary(rng, n);
        v = w * core * w.adjoint();
        quasinormal = true;
        break;
      }
      default: {
        const ComplexMatrix w1 = random_unitary(rng, n);
        const ComplexMatrix w2 = random_unitary(rng, n);
        v = w1.leftCols(n - 1) * w2.leftCols(n - 1).adjoint();
        break;
      }
    }
    const double p = pick(rng, kGrid), r = pick(rng, kGrid);
    Trial t(v);
    t.parameters = pr_params(p, r);
    four_conditions(t, v, p, r, quasinormal);
    rec.trial(i, std::move(t));
  }
}

void suite_ascent_one(Recorder& rec, int trials, std::uint64_t seed, const ToleranceConfig& cfg) {
  for (const char* name : {"partial_isometry_not_quasinormal", "nilpotent_2x2"}) {
    const Fixture& f = fixture(name);
    Trial t(f.matrix);
    t.require(ascent(f.matrix, cfg) == 2, "fixture ascent should be 2");
    require_abs_pr_refuted(t, f.matrix, cfg);
    rec.control(f.name, std::move(t));
  }
  for (int i = 0; i < trials; ++i) {
    Rng rng = trial_rng(seed, TheoremId::ASCENT_ONE, i);
    const int n = 2 + i % 4;
    ComplexMatrix m;
    switch (i % 4) {
      case 0: m = normal_matrix(rng, n, rng.uniform_int(0, n - 1)); break;
      case 1: {
        const int rank = rng.uniform_int(0, n - 1);
        ComplexMatrix core = ComplexMatrix::Zero(n, n);
        if (rank > 0) core.topLeftCorner(rank, rank) = random_unitary(rng, rank);
        const ComplexMatrix w = random_unitary(rng, n);
        m = w * core * w.adjoint();
        break;
      }
      case 2: m = nilpotent(rng, n); break;
      default: m = rank_deficient(rng, n, rng.uniform_int(1, n - 1)); break;
    }
    const double p = pick(rng, kGrid), r = pick(rng, kGrid);
    Trial t(m);
    t.parameters = pr_params(p, r);
    const int asc = ascent(m, cfg);
    const ClassVerdict abs = is_absolute_pr_paranormal(m, p, r, cfg);
    if (abs.member) t.require(asc == 1, "abs-(p,r) operator with ascent " + std::to_string(asc));
    t.require((asc == 1) == (rank(m * m, cfg) == rank(m, cfg)),
              "ascent disagrees with rank(T^2) = rank(T)");
    t.skip_if(abs.marginal);
    rec.trial(i, std::move(t));
  }
}

void suite_root_partial_isometry(Recorder& rec, int trials, std::uint64_t seed,
                                 const ToleranceConfig& cfg) {
  // Each boundary matrix keeps a weaker class and a partial-isometry square;
  // absolute-(p,r)-paranormality is the one hypothesis that fails.
  struct BoundaryCase {
    const char* fixture;
    ClassId weaker;
  };
  for (const BoundaryCase c : {BoundaryCase{"normaloid_square_partial_isometry", ClassId::normaloid},
                             BoundaryCase{"binormal_nilpotent_scaled", ClassId::binormal},
                             BoundaryCase{"posinormal_involution", ClassId::posinormal}}) {
    const Fixture& f = fixture(c.fixture);
    Trial t(f.matrix);
    const ClassReport report = classify(f.matrix, {}, cfg);
    t.require(report.member(c.weaker), std::string(to_string(c.weaker)) + " should hold");
    t.require(is_partial_isometry(matrix_power(f.matrix, 2), cfg).member,
              "T^2 should be a partial isometry");
    t.require(!report.member(ClassId::partial_isometry), "T should not be a partial isometry");
    require_abs_pr_refuted(t, f.matrix, cfg);
    rec.control(f.name, std::move(t));
  }
  for (int i = 0; i < trials; ++i) {
    Rng rng = trial_rng(seed, TheoremId::ROOT_PARTIAL_ISOMETRY, i);
    const int n = 2 + i % 3;
    const int power = 2 + (i / 4) % 2;
    ComplexMatrix m;
    switch (i % 4) {
      case 0: {
        const int rank = rng.uniform_int(0, n);
        ComplexMatrix core = ComplexMatrix::Zero(n, n);
        if (rank > 0) core.topLeftCorner(rank, rank) = random_unitary(rng, rank);
        const ComplexMatrix w = random_unitary(rng, n);
        m = w * core * w.adjoint();
        break;
      }
      case 1: m = normal_root(rng, n, power, 1.0); break;
      case 2: m = similarity_root(rng, n, power, 1.0); break;
      default: {
        const int rank = rng.uniform_int(1, n - 1);
        const ComplexMatrix w1 = random_unitary(rng, n);
        const ComplexMatrix w2 = random_unitary(rng, n);
        m = w1.leftCols(rank) * w2.leftCols(rank).adjoint();
        break;
      }
    }
    const double p = pick(rng, kGrid), r = pick(rng, kGrid);
    Trial t(m);
    Json params = pr_params(p, r);
    params["n"] = power;
    t.parameters = params;
    const ClassVerdict abs = is_absolute_pr_paranormal(m, p, r, cfg);
    const ClassVerdict root = is_partial_isometry(matrix_power(m, power), cfg);
    if (abs.member && root.member) {
      const ClassVerdict pi = is_partial_isometry(m, cfg);
      const ClassVerdict qn = is_quasinormal(m, cfg);
      t.require(pi.member && qn.member, "T is not a quasinormal partial isometry",
                std::min(pi.margin, qn.margin));
      t.skip_if(pi.marginal || qn.marginal);
    }
    t.skip_if(abs.marginal || root.marginal);
    rec.trial(i, std::move(t));
  }
}

void suite_monotonicity(Recorder& rec, int trials, std::uint64_t seed, const ToleranceConfig& cfg) {
  {
    const Fixture& f = fixture("partial_isometry_not_quasinormal");
    Trial t(f.matrix);
    require_abs_pr_refuted(t, f.matrix, cfg);
    rec.control(f.name, std::move(t));
  }
  for (int i = 0; i < trials; ++i) {
    Rng rng = trial_rng(seed, TheoremId::MONOTONICITY, i);
    const int n = 2 + i % 3;
    ComplexMatrix m;
    switch (i % 4) {
      case 0: m = normal_matrix(rng, n, i % 8 == 0 ? 1 : 0); break;
      case 1: m = random_gaussian(rng, n); break;
      case 2: {
        // Within tolerance (stays a member) or clearly outside the marginal band.
        static constexpr std::array<double, 3> kEps{1e-12, 1e-3, 1e-2};
        m = perturbed(rng, normal_matrix(rng, n), pick(rng, kEps));
        break;
      }
      default: m = random_binormal(rng, n); break;
    }
    Trial t(m);
    std::array<std::array<ClassVerdict, 3>, 3> v;
    bool marginal = false;
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) {
        v[a][b] = is_absolute_pr_paranormal(m, kGrid[a], kGrid[b], cfg);
        marginal = marginal || v[a][b].marginal;
      }
    bool any = false;
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) {
        if (!v[a][b].member) continue;
        any = true;
        for (std::size_t c = a; c < 3; ++c)
          for (std::size_t d = b; d < 3; ++d)
            t.require(v[c][d].member, "abs-(p,r) not inherited by larger (p,r)", v[c][d].margin);
      }
    if (any) {
      const ClassVerdict nd = is_normaloid(m, cfg);
      t.require(nd.member, "abs-(p,r) operator is not normaloid", nd.margin);
      marginal = marginal || nd.marginal;
    }
    t.skip_if(marginal);
    rec.trial(i, std::move(t));
  }
}

void suite_fundamental_identity(Recorder& rec, int trials, std::uint64_t seed,
                                const ToleranceConfig& cfg) {
  auto identities = [&](Trial& t, const ComplexMatrix& m) {
    for (double alpha : {0.3, 0.5, 1.0, 2.0, 3.7}) {
      const double res = fundamental_identity_residual(m, alpha, cfg);
      t.require(res <= kIdentityTol, "T|T|^a != |T*|^a T at a = " + format_double(alpha), -res);
    }
    for (double s : {1.0, 1.5, 2.0, 3.0}) {
      const double res = trans_equiv_residual(m, s, cfg);
      t.require(res <= kIdentityTol, "transform square identity fails at s = " + format_double(s),
                -res);
    }
    for (double q : {0.5, 1.0, 2.0, 3.0}) {
      const TransformResult tr = generalized_transform(m, q, cfg);
      for (const auto& [key, res] : tr.residuals) {
        t.require(res <= kIdentityTol, key + " residual at s = " + format_double(q), -res);
      }
      const double gap = normalized(
          operator_norm(modulus_power(m, 2.0 * q, cfg) - adjoint_modulus_power(m, 2.0 * q, cfg)),
          operator_norm(m), 2.0 * q);
      if (gap <= kIdentityTol) {
        t.require(is_normal(m, cfg).member, "|T|^{2s} = |T*|^{2s} but T is not normal");
      }
    }
  };
  {
    const Fixture& f = fixture("nilpotent_2x2");
    Trial t(f.matrix);
    identities(t, f.matrix);
    rec.control(f.name, std::move(t));
  }
  for (int i = 0; i < trials; ++i) {
    Rng rng = trial_rng(seed, TheoremId::FUNDAMENTAL_IDENTITY, i);
    const int n = 2 + i % 5;
    ComplexMatrix m;
    switch (i % 3) {
      case 0: m = random_gaussian(rng, n); break;
      case 1: m = rank_deficient(rng, n, rng.uniform_int(1, n - 1)); break;
      default: m = normal_matrix(rng, n); break;
    }
    Trial t(m);
    identities(t, m);
    rec.trial(i, std::move(t));
  }
}

void suite_chain_consistency(Recorder& rec, int trials, std::uint64_t seed,
                             const ToleranceConfig& cfg) {
  for (const Fixture& f : fixture_registry()) {
    Trial t(f.matrix);
    const ClassReport report = classify(f.matrix, {}, cfg);
    t.require(report.chain_consistent,
              report.chain_consistent ? "" : "chain violated: " + report.chain_violations.front());
    rec.control(f.name, std::move(t));
  }
  const auto& generators = all_generator_classes();
  for (int i = 0; i < trials; ++i) {
    Rng rng = trial_rng(seed, TheoremId::CHAIN_CONSISTENCY, i);
    const int n = 2 + i % 3;
    const std::size_t kinds = generators.size() + 1;
    ComplexMatrix m;
    if (static_cast<std::size_t>(i) % kinds == generators.size()) {
      m = perturbed(rng, normal_matrix(rng, n), 1e-3);
    } else {
      GeneratorSpec spec;
      spec.generator = generators[static_cast<std::size_t>(i) % kinds];
      spec.dimension = n;
      spec.seed = rng.next_u64();
      m = generate(spec);
    }
    Trial t(m);
    const ClassReport report = classify(m, {}, cfg);
    t.require(report.chain_consistent,
              report.chain_consistent ? "" : "chain violated: " + report.chain_violations.front());
    rec.trial(i, std::move(t));
  }
}

SuiteFn suite_for(TheoremId id) {
  switch (id) {
    case TheoremId::SELF_ADJOINT_CHAR: return suite_self_adjoint_char;
    case TheoremId::TWO_BY_TWO_NORMALOID: return suite_two_by_two;
    case TheoremId::SCALAR_ROOT: return suite_scalar_root;
    case TheoremId::NTH_ROOT_NORMAL: return suite_nth_root_normal;
    case TheoremId::BINORMAL_HYPONORMAL: return suite_binormal_hyponormal;
    case TheoremId::POWER_INEQUALITY: return suite_power_inequality;
    case TheoremId::MIXED_ADJOINT_POWER: return suite_mixed_adjoint_power;
    case TheoremId::FINITE_DIM_COLLAPSE: return suite_finite_dim_collapse;
    case TheoremId::PARTIAL_ISOMETRY_CHAR: return suite_partial_isometry_char;
    case TheoremId::ASCENT_ONE: return suite_ascent_one;
    case TheoremId::ROOT_PARTIAL_ISOMETRY: return suite_root_partial_isometry;
    case TheoremId::MONOTONICITY: return suite_monotonicity;
    case TheoremId::FUNDAMENTAL_IDENTITY: return suite_fundamental_identity;
    case TheoremId::CHAIN_CONSISTENCY: return suite_chain_consistency;
  }
  throw UnknownTheoremId("unknown theorem id");
}

}  // namespace

std::string_view to_string(TheoremId id) {
  for (const auto& entry : kTheoremNames)
    if (entry.id == id) return entry.name;
  return "UNKNOWN";
}

TheoremId theorem_id_from_string(std::string_view name) {
  for (const auto& entry : kTheoremNames)
    if (entry.name == name) return entry.id;
  throw UnknownTheoremId("unknown theorem id: " + std::string(name));
}

const std::vector<TheoremId>& all_theorem_ids() {
  static const std::vector<TheoremId> ids = [] {
    std::vector<TheoremId> out;
    for (const auto& entry : kTheoremNames) out.push_back(entry.id);
    return out;
  }();
  return ids;
}

bool PropertyResult::skip_alarm() const {
  return trials > 0 && static_cast<double>(skipped) >= kSkipAlarm * trials;
}

PropertyResult run_suite(TheoremId id, int trials, std::uint64_t seed, const ToleranceConfig& cfg) {
  if (trials < 1) throw InvalidParameter("trials must be at least 1");
  cfg.validate();
  const SuiteFn fn = suite_for(id);
  PropertyResult result;
  result.theorem_id = id;
  result.seed = seed;
  result.trials = trials;
  result.worst_margin = std::numeric_limits<double>::infinity();
  Recorder rec(result);
  fn(rec, trials, seed, cfg);
  return result;
}

std::vector<PropertyResult> run_all(int trials, std::uint64_t seed, const ToleranceConfig& cfg) {
  std::vector<PropertyResult> out;
  for (TheoremId id : all_theorem_ids()) out.push_back(run_suite(id, trials, seed, cfg));
  return out;
}

Json to_json(const PropertyResult& result) {
  Json j;
  j["theorem_id"] = std::string(to_string(result.theorem_id));
  j["seed"] = result.seed;
  j["generator"] = std::string(kGeneratorName);
  j["trials"] = result.trials;
  j["controls"] = result.controls;
  j["failures"] = result.failures;
  j["skipped"] = result.skipped;
  j["skip_alarm"] = result.skip_alarm();
  j["passed"] = result.passed();
  j["worst_margin"] = result.worst_margin;
  j["fixtures"] = result.fixtures;
  if (result.counterexample) {
    const Counterexample& c = *result.counterexample;
    Json cj;
    cj["source"] = c.source;
    cj["detail"] = c.detail;
    cj["parameters"] = c.parameters;
    cj["matrix"] = matrix_to_json(c.matrix);
    j["counterexample"] = cj;
  }
  return j;
}

Json results_to_json(const std::vector<PropertyResult>& results) {
  Json out = Json::array();
  for (const auto& r : results) out.push_back(to_json(r));
  return out;
}

}  // namespace normaloid
