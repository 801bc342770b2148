#pragma once

#include <cstdint>
#include <vector>

#include "normaloid/matrix.hpp"

namespace normaloid {

/// Low-discrepancy points on the unit sphere of C^n.
///
/// A Halton sequence in [0,1)^{2n} (prime bases 2, 3, 5, ...) is shifted by a
/// seeded Cranley-Patterson rotation, mapped to Gaussians through the inverse
/// normal CDF and normalized. Dimensions beyond the prime table fall back to
/// the seeded Rng.
class HaltonSphere {
 public:
  HaltonSphere(int complex_dim, std::uint64_t seed, std::uint64_t skip = 0);

  ComplexVector next();

  /// Writes the next point as split re/im arrays (length complex_dim each).
  void next_into(double* re, double* im);

  int dim() const { return dim_; }

 private:
  int dim_;
  std::uint64_t index_;
  std::uint64_t seed_;
  std::vector<double> shift_;
  std::vector<double> scratch_;
};

}  // namespace normaloid
