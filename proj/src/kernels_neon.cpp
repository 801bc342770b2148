#include <arm_neon.h>

#include "normaloid/kernels.hpp"

namespace normaloid::kernels::detail {

namespace {
constexpr int kMaxDim = 32;
constexpr std::size_t kLanes = 2;
}  // namespace

void hermitian_forms_neon(const PackedHermitian& h, const VectorBatch& x, double* out) {
  const int n = h.n;
  const std::size_t stride = x.count;
  if (n > kMaxDim) {
    hermitian_forms_scalar(h, x, 0, x.count, out);
    return;
  }
  const std::size_t full = x.count - x.count % kLanes;
  float64x2_t a[kMaxDim];
  float64x2_t b[kMaxDim];
  for (std::size_t j = 0; j < full; j += kLanes) {
    for (int k = 0; k < n; ++k) {
      a[k] = vld1q_f64(&x.re[k * stride + j]);
      b[k] = vld1q_f64(&x.im[k * stride + j]);
    }
    float64x2_t diag_sum = vdupq_n_f64(0.0);
    float64x2_t cross_sum = vdupq_n_f64(0.0);
    std::size_t p = 0;
    for (int k = 0; k < n; ++k) {
      const float64x2_t mag = vfmaq_f64(vmulq_f64(b[k], b[k]), a[k], a[k]);
      diag_sum = vfmaq_n_f64(diag_sum, mag, h.diag[k]);
      for (int l = k + 1; l < n; ++l, ++p) {
        const float64x2_t re_part = vfmaq_f64(vmulq_f64(b[k], b[l]), a[k], a[l]);
        const float64x2_t im_part = vfmsq_f64(vmulq_f64(a[k], b[l]), b[k], a[l]);
        cross_sum = vfmaq_n_f64(cross_sum, re_part, h.upper_re[p]);
        cross_sum = vfmsq_n_f64(cross_sum, im_part, h.upper_im[p]);
      }
    }
    vst1q_f64(out + j, vfmaq_n_f64(diag_sum, cross_sum, 2.0));
  }
  hermitian_forms_scalar(h, x, full, x.count, out);
}

}  // namespace normaloid::kernels::detail
