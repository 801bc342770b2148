#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "normaloid/matrix.hpp"
#include "normaloid/random.hpp"

// Seeded constructors for matrices inside a given class. Every generator is a
// pure function of (dimension, seed, rank, scale); the Rng overloads let
// composite constructions share one stream.
namespace normaloid {

enum class GeneratorClass {
  random,
  unitary,
  normal,
  psd,
  self_adjoint,
  partial_isometry,
  quasinormal_partial_isometry,
  binormal,
  normaloid,
  posinormal,
};

std::string_view to_string(GeneratorClass g);
/// Throws InvalidParameter for unknown names.
GeneratorClass generator_class_from_string(std::string_view name);
const std::vector<GeneratorClass>& all_generator_classes();

struct GeneratorSpec {
  GeneratorClass generator = GeneratorClass::random;
  int dimension = 2;
  std::uint64_t seed = 0;
  std::optional<int> rank;  // partial isometries and binormal only
  double spectrum_scale = 1.0;

  /// Throws InvalidParameter unless dimension >= 1, 0 <= rank <= dimension
  /// and spectrum_scale > 0.
  void validate() const;
};

ComplexMatrix generate(const GeneratorSpec& spec);

/// iid standard complex Gaussian entries.
ComplexMatrix gen_random(int n, std::uint64_t seed, double scale = 1.0);
/// Haar unitary (QR of a Gaussian matrix with the phases of diag(R) removed).
ComplexMatrix gen_unitary(int n, std::uint64_t seed);
/// W diag(z) W* with complex Gaussian z.
ComplexMatrix gen_normal(int n, std::uint64_t seed, double scale = 1.0);
/// A*A.
ComplexMatrix gen_psd(int n, std::uint64_t seed, double scale = 1.0);
/// W diag(x) W* with real Gaussian x.
ComplexMatrix gen_self_adjoint(int n, std::uint64_t seed, double scale = 1.0);
/// W1 (I_rank + 0) W2*.
ComplexMatrix gen_partial_isometry(int n, int rank, std::uint64_t seed);
/// W (U0 + 0) W* with U0 a rank x rank unitary.
ComplexMatrix gen_quasinormal_partial_isometry(int n, int rank, std::uint64_t seed);
/// W (Pi D) W* with Pi a permutation times a diagonal unitary and D >= 0
/// diagonal with entries in [0.5, 2] (n - rank of them zero when rank is set).
ComplexMatrix gen_binormal(int n, std::uint64_t seed, std::optional<int> rank = std::nullopt,
                           double scale = 1.0);
/// W (||A|| e^{i theta} + A) W* with A of size n - 1.
ComplexMatrix gen_normaloid(int n, std::uint64_t seed, double scale = 1.0);
/// Gaussian matrix resampled until sigma_min > 0.05 sigma_max.
ComplexMatrix gen_posinormal(int n, std::uint64_t seed, double scale = 1.0);

ComplexMatrix random_gaussian(Rng& rng, int n, double scale = 1.0);
ComplexMatrix random_unitary(Rng& rng, int n);
ComplexMatrix random_binormal(Rng& rng, int n, std::optional<int> rank = std::nullopt,
                              double scale = 1.0);
ComplexVector random_unit_vector(Rng& rng, int n);

}  // namespace normaloid
