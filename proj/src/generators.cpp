#include "normaloid/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "normaloid/errors.hpp"
#include "normaloid/linalg.hpp"

namespace normaloid {

namespace {

struct GeneratorName {
  GeneratorClass id;
  std::string_view name;
};

constexpr std::array<GeneratorName, 10> kGeneratorNames{{
    {GeneratorClass::random, "random"},
    {GeneratorClass::unitary, "unitary"},
    {GeneratorClass::normal, "normal"},
    {GeneratorClass::psd, "psd"},
    {GeneratorClass::self_adjoint, "self_adjoint"},
    {GeneratorClass::partial_isometry, "partial_isometry"},
    {GeneratorClass::quasinormal_partial_isometry, "quasinormal_partial_isometry"},
    {GeneratorClass::binormal, "binormal"},
    {GeneratorClass::normaloid, "normaloid"},
    {GeneratorClass::posinormal, "posinormal"},
}};

Rng stream(GeneratorClass g, int n, std::uint64_t seed) {
  return Rng(derive_seed(seed, static_cast<std::uint64_t>(g) + 1, static_cast<std::uint64_t>(n)));
}

void require_dimension(int n) {
  if (n < 1) throw InvalidParameter("dimension must be at least 1");
}

void require_rank(int n, int rank) {
  if (rank < 0 || rank > n) throw InvalidParameter("rank must lie in [0, n]");
}

Complex unit_phase(Rng& rng) {
  const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return {std::cos(theta), std::sin(theta)};
}

ComplexMatrix conjugate(const ComplexMatrix& w, const ComplexMatrix& core) {
  return w * core * w.adjoint();
}

}  // namespace

std::string_view to_string(GeneratorClass g) {
  for (const auto& entry : kGeneratorNames)
    if (entry.id == g) return entry.name;
  return "unknown";
}

GeneratorClass generator_class_from_string(std::string_view name) {
  for (const auto& entry : kGeneratorNames)
    if (entry.name == name) return entry.id;
  throw InvalidParameter("unknown generator class: " + std::string(name));
}

const std::vector<GeneratorClass>& all_generator_classes() {
  static const std::vector<GeneratorClass> ids = [] {
    std::vector<GeneratorClass> out;
    for (const auto& entry : kGeneratorNames) out.push_back(entry.id);
    return out;
  }();
  return ids;
}

void GeneratorSpec::validate() const {
  require_dimension(dimension);
  if (rank) require_rank(dimension, *rank);
  if (!(spectrum_scale > 0.0) || !std::isfinite(spectrum_scale)) {
    throw InvalidParameter("spectrum_scale must be positive and finite");
  }
}

ComplexMatrix generate(const GeneratorSpec& spec) {
  spec.validate();
  const int n = spec.dimension;
  const double scale = spec.spectrum_scale;
  switch (spec.generator) {
    case GeneratorClass::random: return gen_random(n, spec.seed, scale);
    case GeneratorClass::unitary: return gen_unitary(n, spec.seed);
    case GeneratorClass::normal: return gen_normal(n, spec.seed, scale);
    case GeneratorClass::psd: return gen_psd(n, spec.seed, scale);
    case GeneratorClass::self_adjoint: return gen_self_adjoint(n, spec.seed, scale);
    case GeneratorClass::partial_isometry:
      return gen_partial_isometry(n, spec.rank.value_or(n), spec.seed);
    case GeneratorClass::quasinormal_partial_isometry:
      return gen_quasinormal_partial_isometry(n, spec.rank.value_or(n), spec.seed);
    case GeneratorClass::binormal: return gen_binormal(n, spec.seed, spec.rank, scale);
    case GeneratorClass::normaloid: return gen_normaloid(n, spec.seed, scale);
    case GeneratorClass::posinormal: return gen_posinormal(n, spec.seed, scale);
  }
  throw InvalidParameter("unknown generator class");
}

ComplexMatrix random_gaussian(Rng& rng, int n, double scale) {
  require_dimension(n);
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = scale * rng.complex_normal();
  return m;
}

ComplexMatrix random_unitary(Rng& rng, int n) {
  const ComplexMatrix g = random_gaussian(rng, n);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

ComplexVector random_unit_vector(Rng& rng, int n) {
  require_dimension(n);
  ComplexVector v(n);
  do {
    for (int i = 0; i < n; ++i) v(i) = rng.complex_normal();
  } while (v.norm() == 0.0);
  return v / v.norm();
}

ComplexMatrix random_binormal(Rng& rng, int n, std::optional<int> rank, double scale) {
  require_dimension(n);
  const int r = rank.value_or(n);
  require_rank(n, r);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform_int(0, i)]);

  ComplexMatrix pi = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) pi(perm[j], j) = unit_phase(rng);
  ComplexMatrix d = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) d(j, j) = j < r ? scale * rng.uniform(0.5, 2.0) : 0.0;
  return conjugate(random_unitary(rng, n), pi * d);
}

ComplexMatrix gen_random(int n, std::uint64_t seed, double scale) {
  Rng rng = stream(GeneratorClass::random, n, seed);
  return random_gaussian(rng, n, scale);
}

ComplexMatrix gen_unitary(int n, std::uint64_t seed) {
  require_dimension(n);
  Rng rng = stream(GeneratorClass::unitary, n, seed);
  return random_unitary(rng, n);
}

ComplexMatrix gen_normal(int n, std::uint64_t seed, double scale) {
  require_dimension(n);
  Rng rng = stream(GeneratorClass::normal, n, seed);
  const ComplexMatrix w = random_unitary(rng, n);
  ComplexVector z(n);
  for (int i = 0; i < n; ++i) z(i) = scale * rng.complex_normal();
  return conjugate(w, z.asDiagonal());
}

ComplexMatrix gen_psd(int n, std::uint64_t seed, double scale) {
  Rng rng = stream(GeneratorClass::psd, n, seed);
  const ComplexMatrix a = random_gaussian(rng, n, std::sqrt(scale));
  return hermitian_part(a.adjoint() * a);
}

ComplexMatrix gen_self_adjoint(int n, std::uint64_t seed, double scale) {
  require_dimension(n);
  Rng rng = stream(GeneratorClass::self_adjoint, n, seed);
  const ComplexMatrix w = random_unitary(rng, n);
  ComplexVector x(n);
  for (int i = 0; i < n; ++i) x(i) = scale * rng.normal();
  return hermitian_part(conjugate(w, x.asDiagonal()));
}

ComplexMatrix gen_partial_isometry(int n, int rank, std::uint64_t seed) {
  require_dimension(n);
  require_rank(n, rank);
  Rng rng = stream(GeneratorClass::partial_isometry, n, seed);
  const ComplexMatrix w1 = random_unitary(rng, n);
  const ComplexMatrix w2 = random_unitary(rng, n);
  return w1.leftCols(rank) * w2.leftCols(rank).adjoint();
}

ComplexMatrix gen_quasinormal_partial_isometry(int n, int rank, std::uint64_t seed) {
  require_dimension(n);
  require_rank(n, rank);
  Rng rng = stream(GeneratorClass::quasinormal_partial_isometry, n, seed);
  const ComplexMatrix w = random_unitary(rng, n);
  ComplexMatrix core = ComplexMatrix::Zero(n, n);
  if (rank > 0) core.topLeftCorner(rank, rank) = random_unitary(rng, rank);
  return conjugate(w, core);
}

ComplexMatrix gen_binormal(int n, std::uint64_t seed, std::optional<int> rank, double scale) {
  Rng rng = stream(GeneratorClass::binormal, n, seed);
  return random_binormal(rng, n, rank, scale);
}

ComplexMatrix gen_normaloid(int n, std::uint64_t seed, double scale) {
  require_dimension(n);
  Rng rng = stream(GeneratorClass::normaloid, n, seed);
  ComplexMatrix core = ComplexMatrix::Zero(n, n);
  if (n == 1) {
    core(0, 0) = scale * rng.complex_normal();
    return core;
  }
  const ComplexMatrix a = random_gaussian(rng, n - 1, scale);
  core(0, 0) = operator_norm(a) * unit_phase(rng);
  core.bottomRightCorner(n - 1, n - 1) = a;
  return conjugate(random_unitary(rng, n), core);
}

ComplexMatrix gen_posinormal(int n, std::uint64_t seed, double scale) {
  Rng rng = stream(GeneratorClass::posinormal, n, seed);
  for (;;) {
    ComplexMatrix m = random_gaussian(rng, n, scale);
    const RealVector sigma = singular_values(m);
    if (sigma(n - 1) > 0.05 * sigma(0)) return m;
  }
}

}  // namespace normaloid
