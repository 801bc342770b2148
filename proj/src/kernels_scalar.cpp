#include "normaloid/kernels.hpp"

namespace normaloid::kernels {

PackedHermitian PackedHermitian::pack(const ComplexMatrix& h) {
  PackedHermitian out;
  out.n = static_cast<int>(h.rows());
  out.diag.resize(out.n);
  for (int k = 0; k < out.n; ++k) {
    out.diag[k] = h(k, k).real();
    for (int l = k + 1; l < out.n; ++l) {
      // Average the two triangles so slightly asymmetric inputs are handled
      // the same way as the Hermitian part.
      const Complex upper = 0.5 * (h(k, l) + std::conj(h(l, k)));
      out.upper_re.push_back(upper.real());
      out.upper_im.push_back(upper.imag());
    }
  }
  return out;
}

ComplexVector VectorBatch::vector(std::size_t j) const {
  ComplexVector v(dim);
  for (int k = 0; k < dim; ++k) v(k) = Complex(re[k * count + j], im[k * count + j]);
  return v;
}

namespace detail {

// x^* H x = sum_k d_k |x_k|^2 + 2 sum_{k<l} Re(H_kl conj(x_k) x_l), with
// Re(H_kl conj(x_k) x_l) = h (a_k a_l + b_k b_l) - g (a_k b_l - b_k a_l).
void hermitian_forms_scalar(const PackedHermitian& h, const VectorBatch& x, std::size_t begin,
                            std::size_t end, double* out) {
  const int n = h.n;
  const std::size_t stride = x.count;
  for (std::size_t j = begin; j < end; ++j) {
    double diag_sum = 0.0;
    double cross_sum = 0.0;
    std::size_t p = 0;
    for (int k = 0; k < n; ++k) {
      const double ak = x.re[k * stride + j];
      const double bk = x.im[k * stride + j];
      diag_sum += h.diag[k] * (ak * ak + bk * bk);
      for (int l = k + 1; l < n; ++l, ++p) {
        const double al = x.re[l * stride + j];
        const double bl = x.im[l * stride + j];
        cross_sum += h.upper_re[p] * (ak * al + bk * bl) - h.upper_im[p] * (ak * bl - bk * al);
      }
    }
    out[j] = diag_sum + 2.0 * cross_sum;
  }
}

}  // namespace detail
}  // namespace normaloid::kernels
