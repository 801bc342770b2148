#include "normaloid/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>

#include "normaloid/errors.hpp"
#include "normaloid/linalg.hpp"
#include "normaloid/quasi_random.hpp"
#include "normaloid/random.hpp"

namespace normaloid {

namespace {

constexpr double kTinyPower = 1e-14;  // b below this: the power term is dropped
constexpr int kMaxIterations = 500;
constexpr double kGradientTol = 1e-10;
constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-16;
constexpr double kMaxStep = 8.0;
constexpr std::uint64_t kStreamSphere = 0x53504852;  // "SPHR"
constexpr std::uint64_t kStreamOracle = 0x4f52434c;  // "ORCL"
constexpr int kOracleMaxDim = 4;
constexpr std::size_t kOracleBatch = 4096;

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidParameter(std::string(name) + " must be positive and finite");
  }
}

struct Normalized {
  ComplexMatrix t;
  double norm;  // ||T||, or 0 for the zero matrix
};

Normalized normalize(const ComplexMatrix& t) {
  require_valid(t);
  const double norm = operator_norm(t);
  if (norm <= kAbsoluteFloor) return {ComplexMatrix::Zero(t.rows(), t.cols()), 0.0};
  return {t / norm, norm};
}

// Raw lambda for a lambda found on the normalized operator.
double raw_lambda(double lambda, double norm) {
  return norm > 0.0 ? lambda * norm * norm : lambda;
}

double power_term(double b, double exponent) {
  return b < kTinyPower ? 0.0 : std::pow(b, exponent);
}

ComplexMatrix gram(const ComplexMatrix& m) { return hermitian_part(m.adjoint() * m); }

// Evaluates f at x and keeps A x, B x for the gradient.
class Evaluator {
 public:
  explicit Evaluator(const SphereProblem& problem)
      : problem_(problem), ax_(problem.A.rows()), bx_(problem.A.rows()) {}

  double operator()(const ComplexVector& x) {
    ax_.noalias() = problem_.A * x;
    bx_.noalias() = problem_.B * x;
    a_ = x.dot(ax_).real();
    b_ = std::max(x.dot(bx_).real(), 0.0);
    return a_ - power_term(b_, problem_.exponent);
  }

  // Euclidean gradient at the last evaluated point.
  void gradient(ComplexVector& g) const {
    const double e = problem_.exponent;
    const double coef = b_ < kTinyPower ? 0.0 : e * std::pow(b_, e - 1.0);
    g = 2.0 * (ax_ - coef * bx_);
  }

  double b() const { return b_; }

 private:
  const SphereProblem& problem_;
  ComplexVector ax_;
  ComplexVector bx_;
  double a_ = 0.0;
  double b_ = 0.0;
};

struct Descent {
  double value;
  bool converged;
  long evaluations;
};

// Projected gradient descent with Armijo backtracking; x is updated in place.
Descent descend(Evaluator& eval, ComplexVector& x, ComplexVector& trial, ComplexVector& grad) {
  double f = eval(x);
  long evaluations = 1;
  double step = 0.5;
  for (int it = 0; it < kMaxIterations; ++it) {
    eval.gradient(grad);
    grad -= x.dot(grad).real() * x;
    const double gn2 = grad.squaredNorm();
    if (std::sqrt(gn2) < kGradientTol) return {f, true, evaluations};

    double ft = f;
    bool accepted = false;
    while (step > kMinStep) {
      trial = x - step * grad;
      trial /= trial.norm();
      ft = eval(trial);
      ++evaluations;
      if (ft <= f - kArmijo * step * gn2) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) return {f, true, evaluations};

    const double decrease = f - ft;
    x.swap(trial);
    f = ft;
    if (decrease <= 1e-12 * std::abs(f) + 1e-15) return {f, true, evaluations};
    step = std::min(step * 2.0, kMaxStep);
  }
  return {f, false, evaluations};
}

void finish(PencilCertificate& cert, const ToleranceConfig& cfg) {
  cert.threshold = cfg.psd_tol;
  cert.decision = cert.margin >= -cfg.psd_tol;
  cert.marginal = in_marginal_band(cert.margin, cfg.psd_tol);
}

struct GridScan {
  double min_value = std::numeric_limits<double>::infinity();
  double lambda = 1.0;
  ComplexVector vector;
  long evaluations = 0;
};

// Min eigenvalue of pencil(lambda) over the normalized lambda grid.
template <class Pencil>
GridScan scan_grid(Eigen::Index n, int points, Pencil pencil) {
  GridScan scan;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(n);
  for (const double lambda : lambda_grid(1.0, points)) {
    solver.compute(pencil(lambda), Eigen::EigenvaluesOnly);
    ++scan.evaluations;
    const double value = solver.eigenvalues()(0);
    if (value < scan.min_value) {
      scan.min_value = value;
      scan.lambda = lambda;
    }
  }
  solver.compute(pencil(scan.lambda), Eigen::ComputeEigenvectors);
  scan.vector = solver.eigenvectors().col(0);
  return scan;
}

ComplexMatrix abs_pr_pencil(const SphereProblem& problem, double p, double r, double lambda) {
  const auto n = problem.A.rows();
  return r * problem.A - (p + r) * std::pow(lambda, p) * problem.B +
         p * std::pow(lambda, p + r) * ComplexMatrix::Identity(n, n);
}

PencilCertificate grid_certificate(const GridScan& scan, double scale, double norm,
                                   const ToleranceConfig& cfg) {
  PencilCertificate cert;
  cert.method = PencilMethod::lambda_grid;
  cert.margin = scan.min_value / scale;
  cert.evaluations = scan.evaluations;
  finish(cert, cfg);
  if (!cert.decision) {
    cert.witness_lambda = raw_lambda(scan.lambda, norm);
    cert.witness_vector = scan.vector;
  }
  return cert;
}

using SampleSet = std::vector<kernels::VectorBatch>;

// The oracle's point set depends only on (n, seed, samples); generating it
// dominates the oracle's cost, so the last few sets are kept.
std::shared_ptr<const SampleSet> oracle_samples(int n, std::uint64_t seed, std::size_t samples) {
  using Key = std::tuple<int, std::uint64_t, std::size_t>;
  static std::mutex mutex;
  static std::vector<std::pair<Key, std::shared_ptr<const SampleSet>>> cache;
  constexpr std::size_t kCacheEntries = 4;
  const Key key{n, seed, samples};
  {
    std::lock_guard lock(mutex);
    for (const auto& [k, set] : cache)
      if (k == key) return set;
  }

  auto set = std::make_shared<SampleSet>();
  HaltonSphere halton(n, derive_seed(seed, kStreamOracle));
  std::vector<double> re(n), im(n);
  for (std::size_t done = 0; done < samples;) {
    const std::size_t m = std::min(kOracleBatch, samples - done);
    kernels::VectorBatch& batch = set->emplace_back(n, m);
    for (std::size_t j = 0; j < m; ++j) {
      halton.next_into(re.data(), im.data());
      for (int k = 0; k < n; ++k) {
        batch.re[k * m + j] = re[k];
        batch.im[k * m + j] = im[k];
      }
    }
    done += m;
  }

  std::lock_guard lock(mutex);
  if (cache.size() >= kCacheEntries) cache.erase(cache.begin());
  cache.emplace_back(key, set);
  return set;
}

SphereProblem abs_pr_problem_normalized(const ComplexMatrix& tn, double p, double r,
                                        const ToleranceConfig& cfg) {
  const ComplexMatrix s = adjoint_modulus_power(tn, r, cfg);
  SphereProblem problem;
  problem.A = gram(modulus_power(tn, p, cfg) * s);
  problem.B = gram(s);
  problem.exponent = (p + r) / r;
  return problem;
}

}  // namespace

std::string_view to_string(PencilMethod method) {
  switch (method) {
    case PencilMethod::lambda_grid: return "lambda-grid";
    case PencilMethod::sphere_opt: return "sphere-opt";
    case PencilMethod::dense_oracle: return "dense-oracle";
  }
  return "unknown";
}

bool in_marginal_band(double margin, double threshold) {
  return margin > -10.0 * threshold && margin < -0.1 * threshold;
}

SphereProblem abs_pr_problem(const ComplexMatrix& t, double p, double r,
                             const ToleranceConfig& cfg) {
  require_positive(p, "p");
  require_positive(r, "r");
  return abs_pr_problem_normalized(normalize(t).t, p, r, cfg);
}

SphereProblem paranormal_problem(const ComplexMatrix& t) {
  const ComplexMatrix tn = normalize(t).t;
  return {gram(tn * tn), gram(tn), 2.0};
}

SphereProblem k_paranormal_problem(const ComplexMatrix& t, int k) {
  if (k < 1) throw InvalidParameter("k must be a positive integer");
  const ComplexMatrix tn = normalize(t).t;
  return {gram(matrix_power(tn, k + 1)), gram(tn), static_cast<double>(k + 1)};
}

SphereProblem absolute_k_problem(const ComplexMatrix& t, double k, const ToleranceConfig& cfg) {
  require_positive(k, "k");
  const ComplexMatrix tn = normalize(t).t;
  return {gram(modulus_power(tn, k, cfg) * tn), gram(tn), k + 1.0};
}

double sphere_objective(const SphereProblem& problem, const ComplexVector& x) {
  const double norm = x.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw InvalidParameter("sphere objective needs a nonzero finite vector");
  }
  Evaluator eval(problem);
  return eval(x / norm);
}

PencilCertificate minimize_on_sphere(const SphereProblem& problem, const ToleranceConfig& cfg,
                                     std::span<const ComplexVector> extra_starts) {
  const auto n = problem.A.rows();
  Evaluator eval(problem);
  ComplexVector x(n), trial(n), grad(n), best(n);
  double best_value = std::numeric_limits<double>::infinity();
  bool best_converged = true;
  long evaluations = 0;

  auto run_from = [&](const ComplexVector& start) {
    const double norm = start.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) return;
    x = start / norm;
    const Descent d = descend(eval, x, trial, grad);
    evaluations += d.evaluations;
    if (d.value < best_value) {
      best_value = d.value;
      best_converged = d.converged;
      best = x;
    }
  };

  for (const auto& start : extra_starts) run_from(start);
  HaltonSphere halton(static_cast<int>(n), derive_seed(cfg.seed, kStreamSphere));
  for (int i = 0; i < cfg.sphere_restarts; ++i) run_from(halton.next());

  PencilCertificate cert;
  cert.method = PencilMethod::sphere_opt;
  cert.margin = best_value;
  cert.witness_vector = best;
  cert.evaluations = evaluations;
  cert.converged = best_converged;
  if (!best_converged) {
    if (n <= kOracleMaxDim) {
      const PencilCertificate oracle = dense_oracle(problem, cfg);
      cert.evaluations += oracle.evaluations;
      if (oracle.margin < cert.margin) {
        cert.method = PencilMethod::dense_oracle;
        cert.margin = oracle.margin;
        cert.witness_vector = oracle.witness_vector;
      }
    } else {
      cert.reduced_confidence = true;
    }
  }
  finish(cert, cfg);
  return cert;
}

PencilCertificate dense_oracle(const SphereProblem& problem, const ToleranceConfig& cfg,
                               std::size_t samples, kernels::Isa isa) {
  const int n = static_cast<int>(problem.A.rows());
  const auto pa = kernels::PackedHermitian::pack(problem.A);
  const auto pb = kernels::PackedHermitian::pack(problem.B);
  const auto set = oracle_samples(n, cfg.seed, samples);
  std::vector<double> fa(kOracleBatch), fb(kOracleBatch);

  double best_value = std::numeric_limits<double>::infinity();
  ComplexVector best = ComplexVector::Zero(n);
  for (const auto& batch : *set) {
    kernels::hermitian_forms(isa, pa, batch, fa);
    kernels::hermitian_forms(isa, pb, batch, fb);
    for (std::size_t j = 0; j < batch.count; ++j) {
      const double f = fa[j] - power_term(std::max(fb[j], 0.0), problem.exponent);
      if (f < best_value) {
        best_value = f;
        best = batch.vector(j);
      }
    }
  }

  PencilCertificate cert;
  cert.method = PencilMethod::dense_oracle;
  cert.evaluations = static_cast<long>(samples);
  if (samples > 0) {
    cert.margin = sphere_objective(problem, best);
    cert.witness_vector = best;
  }
  finish(cert, cfg);
  return cert;
}

ComplexMatrix pencil_matrix(const ComplexMatrix& t, double p, double r, double lambda,
                            const ToleranceConfig& cfg) {
  require_valid(t);
  require_positive(p, "p");
  require_positive(r, "r");
  require_positive(lambda, "lambda");
  const ComplexMatrix s = adjoint_modulus_power(t, r, cfg);
  SphereProblem raw;
  raw.A = gram(modulus_power(t, p, cfg) * s);
  raw.B = gram(s);
  return hermitian_part(abs_pr_pencil(raw, p, r, lambda));
}

std::vector<double> lambda_grid(double norm, int points) {
  if (points < 1) throw InvalidParameter("grid needs at least one point");
  const double top = norm > kAbsoluteFloor ? norm * norm : 1.0;
  const double bottom = 1e-6 * top;
  std::vector<double> grid(points);
  if (points == 1) {
    grid[0] = top;
    return grid;
  }
  const double log_ratio = std::log(top / bottom);
  for (int i = 0; i < points; ++i) {
    grid[i] = bottom * std::exp(log_ratio * i / (points - 1));
  }
  grid.back() = top;
  return grid;
}

std::vector<PencilScanRow> pencil_scan(const ComplexMatrix& t, double p, double r, int points,
                                       const ToleranceConfig& cfg) {
  require_valid(t);
  require_positive(p, "p");
  require_positive(r, "r");
  const ComplexMatrix s = adjoint_modulus_power(t, r, cfg);
  SphereProblem raw;
  raw.A = gram(modulus_power(t, p, cfg) * s);
  raw.B = gram(s);

  std::vector<PencilScanRow> rows;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(t.rows());
  for (const double lambda : lambda_grid(operator_norm(t), points)) {
    solver.compute(hermitian_part(abs_pr_pencil(raw, p, r, lambda)), Eigen::EigenvaluesOnly);
    rows.push_back({lambda, solver.eigenvalues()(0)});
  }
  return rows;
}

std::string pencil_scan_csv(const std::vector<PencilScanRow>& rows) {
  std::string out = "lambda,min_eig\n";
  char buf[64];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", row.lambda, row.min_eig);
    out += buf;
  }
  return out;
}

PencilCertificate check_abs_pr_sphere(const ComplexMatrix& t, double p, double r,
                                      const ToleranceConfig& cfg) {
  require_positive(p, "p");
  require_positive(r, "r");
  const Normalized tn = normalize(t);
  const SphereProblem problem = abs_pr_problem_normalized(tn.t, p, r, cfg);
  PencilCertificate cert = minimize_on_sphere(problem, cfg);
  if (!cert.decision) {
    Evaluator eval(problem);
    eval(*cert.witness_vector);
    cert.witness_lambda = raw_lambda(std::pow(eval.b(), 1.0 / r), tn.norm);
  }
  return cert;
}

PencilCertificate check_abs_pr_lambda_grid(const ComplexMatrix& t, double p, double r,
                                           const ToleranceConfig& cfg) {
  require_positive(p, "p");
  require_positive(r, "r");
  const Normalized tn = normalize(t);
  const SphereProblem problem = abs_pr_problem_normalized(tn.t, p, r, cfg);
  const GridScan scan = scan_grid(problem.A.rows(), cfg.grid_points, [&](double lambda) {
    return abs_pr_pencil(problem, p, r, lambda);
  });
  return grid_certificate(scan, r, tn.norm, cfg);
}

PencilCertificate check_abs_pr(const ComplexMatrix& t, double p, double r,
                               const ToleranceConfig& cfg) {
  require_positive(p, "p");
  require_positive(r, "r");
  const Normalized tn = normalize(t);
  const SphereProblem problem = abs_pr_problem_normalized(tn.t, p, r, cfg);
  const GridScan scan = scan_grid(problem.A.rows(), cfg.grid_points, [&](double lambda) {
    return abs_pr_pencil(problem, p, r, lambda);
  });
  const ComplexVector seeds[] = {scan.vector};
  PencilCertificate cert = minimize_on_sphere(problem, cfg, seeds);
  cert.evaluations += scan.evaluations;
  if (!cert.decision) {
    Evaluator eval(problem);
    eval(*cert.witness_vector);
    cert.witness_lambda = raw_lambda(std::pow(eval.b(), 1.0 / r), tn.norm);
  }
  return cert;
}

double abs_pr_margin_at(const ComplexMatrix& t, double p, double r, const ComplexVector& x,
                        const ToleranceConfig& cfg) {
  return sphere_objective(abs_pr_problem(t, p, r, cfg), x);
}

PencilCertificate check_paranormal(const ComplexMatrix& t, const ToleranceConfig& cfg) {
  const Normalized tn = normalize(t);
  const SphereProblem problem = paranormal_problem(tn.t);
  const auto n = problem.A.rows();
  const GridScan scan = scan_grid(n, cfg.grid_points, [&](double lambda) {
    return ComplexMatrix(problem.A - 2.0 * lambda * problem.B +
                         lambda * lambda * ComplexMatrix::Identity(n, n));
  });
  const PencilCertificate grid = grid_certificate(scan, 1.0, tn.norm, cfg);
  const ComplexVector seeds[] = {scan.vector};
  PencilCertificate cert = minimize_on_sphere(problem, cfg, seeds);
  cert.evaluations += scan.evaluations;
  // The grid value at any lambda bounds the sphere minimum from above, so a
  // grid refutation the sphere does not reproduce means the optimizer failed.
  if (!grid.decision && cert.decision) cert.reduced_confidence = true;
  if (!cert.decision) {
    Evaluator eval(problem);
    eval(*cert.witness_vector);
    cert.witness_lambda = raw_lambda(eval.b(), tn.norm);
  }
  return cert;
}

BinormalScalarResult binormal_scalar_check(const ComplexMatrix& t, double p, double r,
                                           const ToleranceConfig& cfg) {
  require_positive(p, "p");
  require_positive(r, "r");
  const ComplexMatrix tn = normalize(t).t;
  const ComplexMatrix f = gram(tn);
  const ComplexMatrix g = hermitian_part(tn * tn.adjoint());
  const double commutator = (f * g - g * f).norm();
  if (commutator > cfg.eq_rtol) {
    throw NotBinormal("T*T and TT* do not commute (normalized commutator " +
                      std::to_string(commutator) + ")");
  }

  // Diagonalize T*T, then TT* inside each eigenspace of T*T.
  const HermitianEigen ef = hermitian_eig(f, cfg, 1.0);
  const auto n = tn.rows();
  constexpr double kClusterTol = 1e-8;
  BinormalScalarResult out;
  for (Eigen::Index begin = 0; begin < n;) {
    Eigen::Index end = begin + 1;
    while (end < n && ef.eigenvalues(end) - ef.eigenvalues(end - 1) <= kClusterTol) ++end;
    const auto q = ef.eigenvectors.middleCols(begin, end - begin);
    const double fv = ef.eigenvalues.segment(begin, end - begin).mean();
    const ComplexMatrix block = hermitian_part(q.adjoint() * g * q);
    const HermitianEigen eg = hermitian_eig(block, cfg, 1.0);
    for (Eigen::Index i = 0; i < eg.eigenvalues.size(); ++i) {
      out.pairs.emplace_back(fv, eg.eigenvalues(i));
    }
    begin = end;
  }

  bool any = false;
  double margin = 0.0;
  for (const auto& [fv, gv] : out.pairs) {
    if (gv <= cfg.psd_tol) continue;
    margin = any ? std::min(margin, fv - gv) : fv - gv;
    any = true;
  }
  out.margin = any ? std::min(margin, 0.0) : 0.0;
  out.decision = out.margin >= -cfg.psd_tol;
  return out;
}

}  // namespace normaloid
