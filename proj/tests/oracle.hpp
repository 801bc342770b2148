#pragma once

// Reference computations for the tests. Nothing here calls into the library
// beyond the matrix typedefs: powers come from a plain eigensolver, the polar
// factor from Newton's iteration, and inequalities are evaluated in the form
// they are defined rather than through the sphere reduction.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>

#include "normaloid/matrix.hpp"

namespace oracle {

using normaloid::Complex;
using normaloid::ComplexMatrix;
using normaloid::ComplexVector;

inline double opnorm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<ComplexMatrix>(m).singularValues()(0);
}

/// A^a for Hermitian PSD A; eigenvalues below 1e-13 ||A|| count as zero.
inline ComplexMatrix herm_pow(const ComplexMatrix& a, double alpha) {
  const ComplexMatrix h = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const auto& ev = es.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  Eigen::VectorXcd d(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    d(i) = ev(i) <= 1e-13 * top ? 0.0 : std::pow(ev(i), alpha);
  }
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

inline ComplexMatrix abs_pow(const ComplexMatrix& t, double q) {
  return herm_pow(t.adjoint() * t, q / 2.0);
}

inline ComplexMatrix adj_abs_pow(const ComplexMatrix& t, double q) {
  return herm_pow(t * t.adjoint(), q / 2.0);
}

/// ||X x||^2 - ||Y x||^{2(p+r)/r} on T / ||T|| with X = |T|^p |T*|^r and
/// Y = |T*|^r: the defining inequality with both sides raised to 2/r.
inline double abs_pr_gap(const ComplexMatrix& t, double p, double r, const ComplexVector& x) {
  const double norm = opnorm(t);
  if (norm == 0.0) return 0.0;
  const ComplexMatrix s = t / norm;
  const ComplexVector u = x / x.norm();
  const ComplexVector y = adj_abs_pow(s, r) * u;
  const ComplexVector z = abs_pow(s, p) * y;
  return z.squaredNorm() - std::pow(y.squaredNorm(), (p + r) / r);
}

/// ||T^2 x|| - ||T x||^2 on T / ||T||.
inline double paranormal_gap(const ComplexMatrix& t, const ComplexVector& x) {
  const double norm = opnorm(t);
  if (norm == 0.0) return 0.0;
  const ComplexMatrix s = t / norm;
  const ComplexVector u = x / x.norm();
  return (s * (s * u)).norm() - (s * u).squaredNorm();
}

class SphereSampler {
 public:
  SphereSampler(int n, unsigned seed) : n_(n), engine_(seed) {}

  ComplexVector next() {
    ComplexVector v(n_);
    for (;;) {
      for (int i = 0; i < n_; ++i) v(i) = Complex(normal_(engine_), normal_(engine_));
      const double len = v.norm();
      if (len > 0.0) return v / len;
    }
  }

 private:
  int n_;
  std::mt19937 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

struct SampledMin {
  double value = std::numeric_limits<double>::infinity();
  ComplexVector at;
};

template <typename Gap>
SampledMin sample_min(int n, int samples, unsigned seed, Gap gap) {
  SphereSampler sampler(n, seed);
  SampledMin best;
  for (int i = 0; i < samples; ++i) {
    const ComplexVector x = sampler.next();
    const double g = gap(x);
    if (g < best.value) {
      best.value = g;
      best.at = x;
    }
  }
  return best;
}

/// Unitary polar factor of an invertible T by the scaled Newton iteration
/// X <- (X + X^{-*}) / 2.
inline ComplexMatrix newton_polar(const ComplexMatrix& t) {
  ComplexMatrix x = t;
  for (int it = 0; it < 100; ++it) {
    const ComplexMatrix next = (x + x.inverse().adjoint()) / 2.0;
    const double change = opnorm(next - x);
    x = next;
    if (change < 1e-15) break;
  }
  return x;
}

/// 2x2 closed forms: ||T|| from the larger eigenvalue of T*T, r(T) from the
/// quadratic formula.
inline double norm_2x2(const ComplexMatrix& t) {
  const ComplexMatrix g = t.adjoint() * t;
  const double a = g(0, 0).real(), d = g(1, 1).real();
  const double b = std::abs(g(0, 1));
  return std::sqrt((a + d) / 2.0 + std::sqrt((a - d) * (a - d) / 4.0 + b * b));
}

inline double radius_2x2(const ComplexMatrix& t) {
  const Complex tr = t.trace();
  const Complex det = t(0, 0) * t(1, 1) - t(0, 1) * t(1, 0);
  const Complex disc = std::sqrt(tr * tr - 4.0 * det);
  return std::max(std::abs((tr + disc) / 2.0), std::abs((tr - disc) / 2.0));
}

inline double commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return opnorm(a * b - b * a);
}

}  // namespace oracle
