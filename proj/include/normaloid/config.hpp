#pragma once

#include <cstdint>
#include <string_view>

namespace normaloid {

// Absolute floor applied to norms before they are used as denominators, so
// that the zero matrix has well-defined (zero) margins.
inline constexpr double kAbsoluteFloor = 1e-14;

/// Numerical tolerance policy shared by every predicate.
///
/// All tolerances are relative to the operator norm of the matrix under test.
/// `seed` drives the quasi-random restart directions of the sphere optimizer;
/// a fixed seed gives byte-identical certificates.
struct ToleranceConfig {
  double eq_rtol = 1e-10;    // operator-equality tests
  double psd_tol = 1e-9;     // slack for positive semidefiniteness
  double rank_tol = 1e-10;   // singular-value cutoff for rank/kernel decisions
  int sphere_restarts = 64;
  int grid_points = 200;
  std::uint64_t seed = 0x6e6f726d616c6f69ULL;

  /// Throws InvalidParameter unless tolerances are > 0 and counts are >= 1.
  void validate() const;

  static ToleranceConfig strict();
  static ToleranceConfig loose();
  /// "default", "strict" or "loose"; throws InvalidParameter otherwise.
  static ToleranceConfig from_profile(std::string_view name);
};

}  // namespace normaloid
