#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "normaloid/config.hpp"
#include "normaloid/matrix.hpp"
#include "normaloid/matrix_io.hpp"

namespace normaloid {

enum class ClassId {
  self_adjoint,
  normal,
  positive,
  unitary,
  orthogonal_projection,
  isometry,
  partial_isometry,
  quasinormal,
  subnormal,
  hyponormal,
  p_hyponormal,
  class_a,
  paranormal,
  k_paranormal,
  absolute_k_paranormal,
  absolute_pr_paranormal,
  normaloid,
  binormal,
  posinormal,
};

std::string_view to_string(ClassId id);
/// Inverse of to_string; throws InvalidParameter for unknown names.
ClassId class_id_from_string(std::string_view name);
/// Every class id in report order.
const std::vector<ClassId>& all_class_ids();

struct ClassParameters {
  std::optional<double> p;
  std::optional<double> r;
  std::optional<double> k;
};

struct ClassVerdict {
  ClassId class_id = ClassId::normal;
  bool member = false;
  double margin = 0.0;     // positive inside, normalized per class
  double threshold = 0.0;  // member iff margin >= -threshold
  bool marginal = false;   // -10 * threshold < margin < -threshold / 10
  ClassParameters parameters;
  std::optional<ComplexVector> witness_vector;
  std::optional<double> witness_lambda;
  std::optional<double> lambda_min;  // posinormal: smallest lambda with TT* <= lambda T*T
  bool reduced_confidence = false;
  std::string note;
};

ClassVerdict is_self_adjoint(const ComplexMatrix& t, const ToleranceConfig& cfg = {});
ClassVerdict is_normal(const ComplexMatrix& t, const ToleranceConfig& cfg = {});
ClassVerdict is_positive(const ComplexMatrix& t, const ToleranceConfig& cfg = {});
ClassVerdict is_unitary(const ComplexMatrix& t, const ToleranceConfig& cfg = {});
ClassVerdict is_orthogonal_projection(const ComplexMatrix& t, const ToleranceConfig& cfg = {});
ClassVerdict is_isometry(const ComplexMatrix& t, const ToleranceConfig& cfg = {});
ClassVerdict is_partial_isometry(const ComplexMatrix& t, const ToleranceConfig& cfg = {});
ClassVerdict is_quasinormal(const ComplexMatrix& t, const ToleranceConfig& cfg = {});
/// Finite-dimensional subnormal operators are normal; same test as is_normal.
ClassVerdict is_subnormal(const ComplexMatrix& t, const ToleranceConfig& cfg = {});
ClassVerdict is_hyponormal(const ComplexMatrix& t, const ToleranceConfig& cfg = {});
/// (TT*)^p <= (T*T)^p for 0 < p <= 1.
ClassVerdict is_p_hyponormal(const ComplexMatrix& t, double p, const ToleranceConfig& cfg = {});
/// T*T <= |T^2|.
ClassVerdict is_class_a(const ComplexMatrix& t, const ToleranceConfig& cfg = {});
ClassVerdict is_paranormal(const ComplexMatrix& t, const ToleranceConfig& cfg = {});
/// ||Tx||^{k+1} <= ||T^{k+1} x|| ||x||^k, integer k >= 0.
ClassVerdict is_k_paranormal(const ComplexMatrix& t, int k, const ToleranceConfig& cfg = {});
/// ||Tx||^{k+1} <= || |T|^k T x|| ||x||^k, real k > 0.
ClassVerdict is_absolute_k_paranormal(const ComplexMatrix& t, double k,
                                      const ToleranceConfig& cfg = {});
ClassVerdict is_absolute_pr_paranormal(const ComplexMatrix& t, double p, double r,
                                       const ToleranceConfig& cfg = {});
/// r(T) = ||T||; margin (r(T) - ||T||) / ||T||.
ClassVerdict is_normaloid(const ComplexMatrix& t, const ToleranceConfig& cfg = {});
ClassVerdict is_binormal(const ComplexMatrix& t, const ToleranceConfig& cfg = {});
/// R(T) contained in R(T*); reports lambda_min when a member.
ClassVerdict is_posinormal(const ComplexMatrix& t, const ToleranceConfig& cfg = {});

/// Smallest n >= 1 with N(T^n) = N(T^{n+1}); at most dim T.
int ascent(const ComplexMatrix& t, const ToleranceConfig& cfg = {});

struct ClassifyOptions {
  std::vector<double> p_list{0.5, 1.0, 2.0};
  std::vector<double> r_list{0.5, 1.0, 2.0};
  std::vector<int> k_list{1, 2};
};

struct ClassReport {
  int dimension = 0;
  double operator_norm = 0.0;
  double spectral_radius = 0.0;
  int ascent = 1;
  ComplexMatrix polar_u;
  std::vector<ClassVerdict> verdicts;
  bool chain_consistent = true;
  std::vector<std::string> chain_violations;

  /// All verdicts with the given id (several for parametrized classes).
  std::vector<const ClassVerdict*> find(ClassId id) const;
  /// True iff every verdict with this id is a member; throws if none exists.
  bool member(ClassId id) const;
};

/// Runs every predicate. p-hyponormality is tested for the p in p_list with
/// p <= 1; k_list feeds both k-paranormal and absolute-k-paranormal.
ClassReport classify(const ComplexMatrix& t, const ClassifyOptions& options = {},
                     const ToleranceConfig& cfg = {});

/// Inclusion-chain and side implications. An implication is violated when
/// the antecedent is a member while the consequent's margin is below
/// -10 * threshold.
std::vector<std::string> chain_violations(const std::vector<ClassVerdict>& verdicts);

Json to_json(const ClassVerdict& verdict);
Json to_json(const ClassReport& report);

}  // namespace normaloid
