#include <immintrin.h>

#include "normaloid/kernels.hpp"

namespace normaloid::kernels::detail {

namespace {
constexpr int kMaxDim = 32;
constexpr std::size_t kLanes = 4;
}  // namespace

void hermitian_forms_avx2(const PackedHermitian& h, const VectorBatch& x, double* out) {
  const int n = h.n;
  const std::size_t stride = x.count;
  if (n > kMaxDim) {
    hermitian_forms_scalar(h, x, 0, x.count, out);
    return;
  }
  const std::size_t full = x.count - x.count % kLanes;
  __m256d a[kMaxDim];
  __m256d b[kMaxDim];
  for (std::size_t j = 0; j < full; j += kLanes) {
    for (int k = 0; k < n; ++k) {
      a[k] = _mm256_loadu_pd(&x.re[k * stride + j]);
      b[k] = _mm256_loadu_pd(&x.im[k * stride + j]);
    }
    __m256d diag_sum = _mm256_setzero_pd();
    __m256d cross_sum = _mm256_setzero_pd();
    std::size_t p = 0;
    for (int k = 0; k < n; ++k) {
      const __m256d mag = _mm256_fmadd_pd(a[k], a[k], _mm256_mul_pd(b[k], b[k]));
      diag_sum = _mm256_fmadd_pd(_mm256_set1_pd(h.diag[k]), mag, diag_sum);
      for (int l = k + 1; l < n; ++l, ++p) {
        const __m256d re_part = _mm256_fmadd_pd(a[k], a[l], _mm256_mul_pd(b[k], b[l]));
        const __m256d im_part = _mm256_fmsub_pd(a[k], b[l], _mm256_mul_pd(b[k], a[l]));
        cross_sum = _mm256_fmadd_pd(_mm256_set1_pd(h.upper_re[p]), re_part, cross_sum);
        cross_sum = _mm256_fnmadd_pd(_mm256_set1_pd(h.upper_im[p]), im_part, cross_sum);
      }
    }
    const __m256d total = _mm256_fmadd_pd(_mm256_set1_pd(2.0), cross_sum, diag_sum);
    _mm256_storeu_pd(out + j, total);
  }
  hermitian_forms_scalar(h, x, full, x.count, out);
}

}  // namespace normaloid::kernels::detail
