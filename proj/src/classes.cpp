#include "normaloid/classes.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "normaloid/errors.hpp"
#include "normaloid/linalg.hpp"
#include "normaloid/pencil.hpp"

namespace normaloid {

namespace {

constexpr int kOracleCrossCheckDim = 3;

struct ClassName {
  ClassId id;
  std::string_view name;
};

constexpr std::array<ClassName, 19> kClassNames{{
    {ClassId::self_adjoint, "self_adjoint"},
    {ClassId::normal, "normal"},
    {ClassId::positive, "positive"},
    {ClassId::unitary, "unitary"},
    {ClassId::orthogonal_projection, "orthogonal_projection"},
    {ClassId::isometry, "isometry"},
    {ClassId::partial_isometry, "partial_isometry"},
    {ClassId::quasinormal, "quasinormal"},
    {ClassId::subnormal, "subnormal"},
    {ClassId::hyponormal, "hyponormal"},
    {ClassId::p_hyponormal, "p_hyponormal"},
    {ClassId::class_a, "class_a"},
    {ClassId::paranormal, "paranormal"},
    {ClassId::k_paranormal, "k_paranormal"},
    {ClassId::absolute_k_paranormal, "absolute_k_paranormal"},
    {ClassId::absolute_pr_paranormal, "absolute_pr_paranormal"},
    {ClassId::normaloid, "normaloid"},
    {ClassId::binormal, "binormal"},
    {ClassId::posinormal, "posinormal"},
}};

double opnorm(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : operator_norm(m); }

// Rotates v so that its largest component is real and positive.
ComplexVector canonical_phase(const ComplexVector& v) {
  Eigen::Index idx = 0;
  v.cwiseAbs().maxCoeff(&idx);
  const double mag = std::abs(v(idx));
  if (mag == 0.0) return v;
  return v * (std::conj(v(idx)) / mag);
}

void settle(ClassVerdict& v) {
  v.member = v.margin >= -v.threshold;
  v.marginal = in_marginal_band(v.margin, v.threshold);
}

ClassVerdict equality_verdict(ClassId id, double margin, const ToleranceConfig& cfg) {
  ClassVerdict v;
  v.class_id = id;
  v.margin = margin;
  v.threshold = cfg.eq_rtol;
  settle(v);
  return v;
}

ClassVerdict psd_verdict(ClassId id, const ComplexMatrix& m, double scale,
                         const ToleranceConfig& cfg) {
  const PsdDecision d = is_psd(m, cfg, std::max(scale, kAbsoluteFloor));
  ClassVerdict v;
  v.class_id = id;
  v.margin = d.margin;
  v.threshold = cfg.psd_tol;
  settle(v);
  if (!v.member) v.witness_vector = canonical_phase(d.witness);
  return v;
}

ClassVerdict pencil_verdict(ClassId id, const PencilCertificate& cert) {
  ClassVerdict v;
  v.class_id = id;
  v.margin = cert.margin;
  v.threshold = cert.threshold;
  v.reduced_confidence = cert.reduced_confidence;
  settle(v);
  if (!v.member) {
    if (cert.witness_vector) v.witness_vector = canonical_phase(*cert.witness_vector);
    v.witness_lambda = cert.witness_lambda;
  }
  if (cert.method == PencilMethod::dense_oracle) v.note = "decided by dense sphere sampling";
  return v;
}

// The worse of two partial verdicts, comparing margins in units of threshold.
ClassVerdict combine(ClassVerdict a, const ClassVerdict& b) {
  if (b.margin / b.threshold < a.margin / a.threshold) {
    const ClassId id = a.class_id;
    a = b;
    a.class_id = id;
  }
  return a;
}

PencilCertificate sphere_with_cross_check(const SphereProblem& problem,
                                          const ToleranceConfig& cfg) {
  PencilCertificate cert = minimize_on_sphere(problem, cfg);
  if (problem.A.rows() <= kOracleCrossCheckDim) {
    const PencilCertificate oracle = dense_oracle(problem, cfg);
    if (oracle.margin < cert.margin) return oracle;
  }
  return cert;
}

double tnorm(const ComplexMatrix& t) {
  require_valid(t);
  return operator_norm(t);
}

}  // namespace

std::string_view to_string(ClassId id) {
  for (const auto& entry : kClassNames)
    if (entry.id == id) return entry.name;
  return "unknown";
}

ClassId class_id_from_string(std::string_view name) {
  for (const auto& entry : kClassNames)
    if (entry.name == name) return entry.id;
  throw InvalidParameter("unknown class id: " + std::string(name));
}

const std::vector<ClassId>& all_class_ids() {
  static const std::vector<ClassId> ids = [] {
    std::vector<ClassId> out;
    for (const auto& entry : kClassNames) out.push_back(entry.id);
    return out;
  }();
  return ids;
}

ClassVerdict is_self_adjoint(const ComplexMatrix& t, const ToleranceConfig& cfg) {
  const double norm = tnorm(t);
  return equality_verdict(ClassId::self_adjoint,
                          -normalized(opnorm(t - t.adjoint()), norm, 1), cfg);
}

ClassVerdict is_normal(const ComplexMatrix& t, const ToleranceConfig& cfg) {
  const double norm = tnorm(t);
  const ComplexMatrix d = t.adjoint() * t - t * t.adjoint();
  return equality_verdict(ClassId::normal, -normalized(opnorm(d), norm, 2), cfg);
}

ClassVerdict is_positive(const ComplexMatrix& t, const ToleranceConfig& cfg) {
  const double norm = tnorm(t);
  ClassVerdict v = is_self_adjoint(t, cfg);
  v.class_id = ClassId::positive;
  return combine(v, psd_verdict(ClassId::positive, hermitian_part(t), norm, cfg));
}

ClassVerdict is_unitary(const ComplexMatrix& t, const ToleranceConfig& cfg) {
  require_valid(t);
  const auto id = ComplexMatrix::Identity(t.rows(), t.cols());
  const double residual =
      std::max(opnorm(t.adjoint() * t - id), opnorm(t * t.adjoint() - id));
  return equality_verdict(ClassId::unitary, -residual, cfg);
}

ClassVerdict is_orthogonal_projection(const ComplexMatrix& t, const ToleranceConfig& cfg) {
  require_valid(t);
  const double residual = std::max(opnorm(t * t - t), opnorm(t - t.adjoint()));
  return equality_verdict(ClassId::orthogonal_projection, -residual, cfg);
}

ClassVerdict is_isometry(const ComplexMatrix& t, const ToleranceConfig& cfg) {
  require_valid(t);
  const auto id = ComplexMatrix::Identity(t.rows(), t.cols());
  return equality_verdict(ClassId::isometry, -opnorm(t.adjoint() * t - id), cfg);
}

ClassVerdict is_partial_isometry(const ComplexMatrix& t, const ToleranceConfig& cfg) {
  require_valid(t);
  const ComplexMatrix p = t.adjoint() * t;
  return equality_verdict(ClassId::partial_isometry, -opnorm(p * p - p), cfg);
}

ClassVerdict is_quasinormal(const ComplexMatrix& t, const ToleranceConfig& cfg) {
  const double norm = tnorm(t);
  const ComplexMatrix d = t * t.adjoint() * t - t.adjoint() * t * t;
  return equality_verdict(ClassId::quasinormal, -normalized(opnorm(d), norm, 3), cfg);
}

ClassVerdict is_subnormal(const ComplexMatrix& t, const ToleranceConfig& cfg) {
  ClassVerdict v = is_normal(t, cfg);
  v.class_id = ClassId::subnormal;
  v.note = "finite-dimensional subnormal operators are normal";
  return v;
}

ClassVerdict is_hyponormal(const ComplexMatrix& t, const ToleranceConfig& cfg) {
  const double norm = tnorm(t);
  return psd_verdict(ClassId::hyponormal, t.adjoint() * t - t * t.adjoint(), norm * norm, cfg);
}

ClassVerdict is_p_hyponormal(const ComplexMatrix& t, double p, const ToleranceConfig& cfg) {
  if (!(p > 0.0 && p <= 1.0)) throw InvalidParameter("p-hyponormality needs 0 < p <= 1");
  const double norm = tnorm(t);
  const ComplexMatrix d = modulus_power(t, 2.0 * p, cfg) - adjoint_modulus_power(t, 2.0 * p, cfg);
  ClassVerdict v = psd_verdict(ClassId::p_hyponormal, d, std::pow(norm, 2.0 * p), cfg);
  v.parameters.p = p;
  return v;
}

ClassVerdict is_class_a(const ComplexMatrix& t, const ToleranceConfig& cfg) {
  const double norm = tnorm(t);
  const ComplexMatrix d = modulus(t * t, cfg) - t.adjoint() * t;
  return psd_verdict(ClassId::class_a, d, norm * norm, cfg);
}

ClassVerdict is_paranormal(const ComplexMatrix& t, const ToleranceConfig& cfg) {
  return pencil_verdict(ClassId::paranormal, check_paranormal(t, cfg));
}

ClassVerdict is_k_paranormal(const ComplexMatrix& t, int k, const ToleranceConfig& cfg) {
  if (k < 0) throw InvalidParameter("k must be a non-negative integer");
  ClassVerdict v;
  if (k == 0) {
    // ||Tx|| <= ||Tx||: every operator qualifies.
    require_valid(t);
    v.class_id = ClassId::k_paranormal;
    v.threshold = cfg.psd_tol;
    settle(v);
  } else {
    v = pencil_verdict(ClassId::k_paranormal,
                       sphere_with_cross_check(k_paranormal_problem(t, k), cfg));
  }
  v.parameters.k = k;
  return v;
}

ClassVerdict is_absolute_k_paranormal(const ComplexMatrix& t, double k,
                                      const ToleranceConfig& cfg) {
  ClassVerdict v = pencil_verdict(ClassId::absolute_k_paranormal,
                                  sphere_with_cross_check(absolute_k_problem(t, k, cfg), cfg));
  v.parameters.k = k;
  return v;
}

ClassVerdict is_absolute_pr_paranormal(const ComplexMatrix& t, double p, double r,
                                       const ToleranceConfig& cfg) {
  ClassVerdict v = pencil_verdict(ClassId::absolute_pr_paranormal, check_abs_pr(t, p, r, cfg));
  v.parameters.p = p;
  v.parameters.r = r;
  return v;
}

ClassVerdict is_normaloid(const ComplexMatrix& t, const ToleranceConfig& cfg) {
  const double norm = tnorm(t);
  ClassVerdict v;
  v.class_id = ClassId::normaloid;
  v.margin = norm <= kAbsoluteFloor ? 0.0 : std::min(spectral_radius(t) - norm, 0.0) / norm;
  v.threshold = cfg.psd_tol;
  settle(v);
  return v;
}

ClassVerdict is_binormal(const ComplexMatrix& t, const ToleranceConfig& cfg) {
  const double norm = tnorm(t);
  const ComplexMatrix a = t.adjoint() * t;
  const ComplexMatrix b = t * t.adjoint();
  return equality_verdict(ClassId::binormal, -normalized(opnorm(a * b - b * a), norm, 4), cfg);
}

ClassVerdict is_posinormal(const ComplexMatrix& t, const ToleranceConfig& cfg) {
  const double norm = tnorm(t);
  const auto n = t.rows();
  const ComplexMatrix outside =
      (ComplexMatrix::Identity(n, n) - range_projector(t.adjoint(), cfg)) * t;
  ClassVerdict v = equality_verdict(ClassId::posinormal, -normalized(opnorm(outside), norm, 1), cfg);
  if (v.member && norm > kAbsoluteFloor) {
    // Largest generalized Rayleigh quotient of TT* against T*T on R(T*):
    // x = V_r S_r^{-1} y turns <T*T x, x> into |y|^2.
    Eigen::JacobiSVD<ComplexMatrix> svd(t, Eigen::ComputeFullV);
    const RealVector& sigma = svd.singularValues();
    Eigen::Index r = 0;
    while (r < sigma.size() && sigma(r) > cfg.rank_tol * sigma(0)) ++r;
    const ComplexMatrix x = svd.matrixV().leftCols(r) *
                            sigma.head(r).cwiseInverse().cast<Complex>().asDiagonal();
    const ComplexMatrix tx = t.adjoint() * x;
    const HermitianEigen eig = hermitian_eig(hermitian_part(tx.adjoint() * tx), cfg);
    v.lambda_min = eig.eigenvalues(eig.eigenvalues.size() - 1);
  }
  return v;
}

int ascent(const ComplexMatrix& t, const ToleranceConfig& cfg) {
  const double norm = tnorm(t);
  const auto n = t.rows();
  if (norm <= kAbsoluteFloor) return 1;  // N(0) = N(0^2) = everything
  // N(T^{k+1}) = N((I - K K*) T) where K spans N(T^k).
  ComplexMatrix kernel = kernel_basis(t, cfg, norm);
  for (int k = 1; k <= n; ++k) {
    const ComplexMatrix squeeze =
        (ComplexMatrix::Identity(n, n) - kernel * kernel.adjoint()) * t;
    ComplexMatrix next = kernel_basis(squeeze, cfg, norm);
    if (next.cols() == kernel.cols()) return k;
    kernel = std::move(next);
  }
  return static_cast<int>(n);
}

std::vector<const ClassVerdict*> ClassReport::find(ClassId id) const {
  std::vector<const ClassVerdict*> out;
  for (const auto& v : verdicts)
    if (v.class_id == id) out.push_back(&v);
  return out;
}

bool ClassReport::member(ClassId id) const {
  const auto found = find(id);
  if (found.empty()) throw InvalidParameter("report has no verdict for " + std::string(to_string(id)));
  return std::all_of(found.begin(), found.end(), [](const ClassVerdict* v) { return v->member; });
}

std::vector<std::string> chain_violations(const std::vector<ClassVerdict>& verdicts) {
  using enum ClassId;
  static const std::vector<ClassId> chain = {
      normal,     quasinormal, subnormal,             hyponormal,
      p_hyponormal, class_a,   paranormal,            absolute_k_paranormal,
      absolute_pr_paranormal,  normaloid};
  std::vector<std::pair<ClassId, ClassId>> edges;
  for (std::size_t i = 0; i < chain.size(); ++i)
    for (std::size_t j = i + 1; j < chain.size(); ++j) edges.emplace_back(chain[i], chain[j]);
  edges.insert(edges.end(), {{self_adjoint, normal},
                             {unitary, normal},
                             {positive, self_adjoint},
                             {orthogonal_projection, positive},
                             {unitary, isometry},
                             {isometry, partial_isometry},
                             {paranormal, k_paranormal},
                             {hyponormal, posinormal},
                             {normal, binormal},
                             {quasinormal, binormal}});

  std::vector<std::string> out;
  for (const auto& [from, to] : edges) {
    for (const auto& a : verdicts) {
      if (a.class_id != from || !a.member) continue;
      for (const auto& c : verdicts) {
        if (c.class_id != to || c.margin >= -10.0 * c.threshold) continue;
        out.push_back(std::string(to_string(from)) + " => " + std::string(to_string(to)) +
                      " (consequent margin " + format_double(c.margin) + ")");
      }
    }
  }
  return out;
}

ClassReport classify(const ComplexMatrix& t, const ClassifyOptions& options,
                     const ToleranceConfig& cfg) {
  cfg.validate();
  if (options.p_list.empty() || options.r_list.empty() || options.k_list.empty()) {
    throw InvalidParameter("parameter lists must be non-empty");
  }
  ClassReport report;
  require_valid(t);
  report.dimension = static_cast<int>(t.rows());
  report.operator_norm = operator_norm(t);
  report.spectral_radius = spectral_radius(t);
  report.ascent = ascent(t, cfg);
  report.polar_u = polar_decompose(t, cfg).U;

  auto& v = report.verdicts;
  v.push_back(is_self_adjoint(t, cfg));
  v.push_back(is_normal(t, cfg));
  v.push_back(is_positive(t, cfg));
  v.push_back(is_unitary(t, cfg));
  v.push_back(is_orthogonal_projection(t, cfg));
  v.push_back(is_isometry(t, cfg));
  v.push_back(is_partial_isometry(t, cfg));
  v.push_back(is_quasinormal(t, cfg));
  v.push_back(is_subnormal(t, cfg));
  v.push_back(is_hyponormal(t, cfg));
  for (double p : options.p_list)
    if (p <= 1.0) v.push_back(is_p_hyponormal(t, p, cfg));
  v.push_back(is_class_a(t, cfg));
  v.push_back(is_paranormal(t, cfg));
  for (int k : options.k_list) v.push_back(is_k_paranormal(t, k, cfg));
  for (int k : options.k_list) v.push_back(is_absolute_k_paranormal(t, k, cfg));
  for (double p : options.p_list)
    for (double r : options.r_list) v.push_back(is_absolute_pr_paranormal(t, p, r, cfg));
  v.push_back(is_normaloid(t, cfg));
  v.push_back(is_binormal(t, cfg));
  v.push_back(is_posinormal(t, cfg));

  report.chain_violations = chain_violations(v);
  report.chain_consistent = report.chain_violations.empty();
  return report;
}

Json to_json(const ClassVerdict& verdict) {
  Json j;
  j["class_id"] = std::string(to_string(verdict.class_id));
  j["member"] = verdict.member;
  j["margin"] = verdict.margin;
  j["threshold"] = verdict.threshold;
  j["marginal"] = verdict.marginal;
  const auto& params = verdict.parameters;
  if (params.p || params.r || params.k) {
    Json pj = Json::object();
    if (params.p) pj["p"] = *params.p;
    if (params.r) pj["r"] = *params.r;
    if (params.k) pj["k"] = *params.k;
    j["parameters"] = pj;
  }
  if (verdict.witness_vector) j["witness_vector"] = vector_to_json(*verdict.witness_vector);
  if (verdict.witness_lambda) j["witness_lambda"] = *verdict.witness_lambda;
  if (verdict.lambda_min) j["lambda_min"] = *verdict.lambda_min;
  if (verdict.reduced_confidence) j["reduced_confidence"] = true;
  if (!verdict.note.empty()) j["note"] = verdict.note;
  return j;
}

Json to_json(const ClassReport& report) {
  Json j;
  j["dimension"] = report.dimension;
  j["operator_norm"] = report.operator_norm;
  j["spectral_radius"] = report.spectral_radius;
  j["ascent"] = report.ascent;
  j["polar_U"] = matrix_to_json(report.polar_u);
  j["chain_consistent"] = report.chain_consistent;
  j["chain_violations"] = report.chain_violations;
  Json verdicts = Json::array();
  for (const auto& v : report.verdicts) verdicts.push_back(to_json(v));
  j["verdicts"] = verdicts;
  return j;
}

}  // namespace normaloid
