#pragma once

#include <complex>

#include <Eigen/Dense>

namespace normaloid {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Throws InvalidMatrix unless `t` is non-empty, square and finite.
void require_valid(const ComplexMatrix& t);

/// T^k by repeated multiplication; T^0 = I.
ComplexMatrix matrix_power(const ComplexMatrix& t, int k);

/// (A + A*) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& a);

/// residual / max(norm, floor)^degree: the homogeneous normalization used by
/// every margin so that verdicts are invariant under T -> cT.
double normalized(double residual, double norm, double degree);

/// Builds an n x n matrix from a row-major list of entries.
ComplexMatrix from_rows(int n, std::initializer_list<Complex> entries);

}  // namespace normaloid
