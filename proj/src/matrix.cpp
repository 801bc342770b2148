#include "normaloid/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "normaloid/config.hpp"
#include "normaloid/errors.hpp"

namespace normaloid {

void require_valid(const ComplexMatrix& t) {
  if (t.rows() == 0 || t.rows() != t.cols()) {
    throw InvalidMatrix("matrix must be square and non-empty");
  }
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    const Complex z = t.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvalidMatrix("matrix has non-finite entries");
    }
  }
}

ComplexMatrix matrix_power(const ComplexMatrix& t, int k) {
  ComplexMatrix out = ComplexMatrix::Identity(t.rows(), t.cols());
  for (int i = 0; i < k; ++i) out = out * t;
  return out;
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) { return (a + a.adjoint()) * 0.5; }

double normalized(double residual, double norm, double degree) {
  return residual / std::pow(std::max(norm, kAbsoluteFloor), degree);
}

ComplexMatrix from_rows(int n, std::initializer_list<Complex> entries) {
  if (static_cast<int>(entries.size()) != n * n) {
    throw InvalidMatrix("entry count does not match dimension");
  }
  ComplexMatrix m(n, n);
  auto it = entries.begin();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = *it++;
  return m;
}

}  // namespace normaloid
