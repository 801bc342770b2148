#include "normaloid/quasi_random.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>

#include <boost/math/special_functions/erf.hpp>

#include "normaloid/random.hpp"

namespace normaloid {

namespace {

constexpr std::array<int, 64> kPrimes = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,  47,  53,
    59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107, 109, 113, 127, 131,
    137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223,
    227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307, 311};

double radical_inverse(std::uint64_t i, int base) {
  double inv = 1.0 / base;
  double f = inv;
  double out = 0.0;
  while (i > 0) {
    out += f * static_cast<double>(i % static_cast<std::uint64_t>(base));
    i /= static_cast<std::uint64_t>(base);
    f *= inv;
  }
  return out;
}

double inverse_normal_cdf(double u) {
  constexpr double kEdge = 1e-15;
  u = std::clamp(u, kEdge, 1.0 - kEdge);
  return std::numbers::sqrt2 * boost::math::erf_inv(2.0 * u - 1.0);
}

}  // namespace

HaltonSphere::HaltonSphere(int complex_dim, std::uint64_t seed, std::uint64_t skip)
    : dim_(complex_dim), index_(skip + 1), seed_(seed), scratch_(2 * complex_dim) {
  Rng rng(derive_seed(seed, 0x4a17));
  shift_.resize(2 * complex_dim);
  for (double& s : shift_) s = rng.uniform();
}

void HaltonSphere::next_into(double* re, double* im) {
  const int real_dim = 2 * dim_;
  const bool quasi = real_dim <= static_cast<int>(kPrimes.size());
  std::optional<Rng> fallback;
  if (!quasi) fallback.emplace(derive_seed(seed_, 0xfa11, index_));
  double norm2 = 0.0;
  for (int d = 0; d < real_dim; ++d) {
    double g;
    if (quasi) {
      double u = radical_inverse(index_, kPrimes[d]) + shift_[d];
      u -= std::floor(u);
      g = inverse_normal_cdf(u);
    } else {
      g = fallback->normal();
    }
    scratch_[d] = g;
    norm2 += g * g;
  }
  ++index_;
  const double inv = norm2 > 0.0 ? 1.0 / std::sqrt(norm2) : 0.0;
  for (int k = 0; k < dim_; ++k) {
    re[k] = scratch_[2 * k] * inv;
    im[k] = scratch_[2 * k + 1] * inv;
  }
  if (norm2 == 0.0) re[0] = 1.0;
}

ComplexVector HaltonSphere::next() {
  std::vector<double> re(dim_), im(dim_);
  next_into(re.data(), im.data());
  ComplexVector v(dim_);
  for (int k = 0; k < dim_; ++k) v(k) = Complex(re[k], im[k]);
  return v;
}

}  // namespace normaloid
