#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "normaloid/matrix.hpp"

// Batched Hermitian quadratic forms, the inner loop of the dense sphere
// oracle. Each kernel has a scalar reference and vectorized variants that are
// selected at runtime and tested for equivalence against the reference.
namespace normaloid::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

/// True when the variant was compiled in and the CPU supports it.
bool isa_available(Isa isa);

/// Best available variant (cached after the first call).
Isa detect_isa();

/// Hermitian matrix in the layout the kernels read: real diagonal plus the
/// strict upper triangle (k < l, row-major) split into real/imaginary parts.
struct PackedHermitian {
  int n = 0;
  std::vector<double> diag;
  std::vector<double> upper_re;
  std::vector<double> upper_im;

  static PackedHermitian pack(const ComplexMatrix& h);
};

/// Vectors in split-complex, dimension-major layout: component k of vector j
/// is (re[k * count + j], im[k * count + j]).
struct VectorBatch {
  int dim = 0;
  std::size_t count = 0;
  std::vector<double> re;
  std::vector<double> im;

  VectorBatch(int dim_, std::size_t count_)
      : dim(dim_), count(count_), re(dim_ * count_), im(dim_ * count_) {}

  ComplexVector vector(std::size_t j) const;
};

/// out[j] = Re(x_j^* H x_j) for j < x.count. out.size() must be >= x.count.
void hermitian_forms(Isa isa, const PackedHermitian& h, const VectorBatch& x,
                     std::span<double> out);

inline void hermitian_forms(const PackedHermitian& h, const VectorBatch& x,
                            std::span<double> out) {
  hermitian_forms(detect_isa(), h, x, out);
}

namespace detail {
void hermitian_forms_scalar(const PackedHermitian& h, const VectorBatch& x, std::size_t begin,
                            std::size_t end, double* out);
#if defined(NORMALOID_HAVE_AVX2)
void hermitian_forms_avx2(const PackedHermitian& h, const VectorBatch& x, double* out);
#endif
#if defined(NORMALOID_HAVE_NEON)
void hermitian_forms_neon(const PackedHermitian& h, const VectorBatch& x, double* out);
#endif
}  // namespace detail

}  // namespace normaloid::kernels
