#include "normaloid/errors.hpp"
#include "normaloid/kernels.hpp"

namespace normaloid::kernels {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(NORMALOID_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#if defined(NORMALOID_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa detect_isa() {
  static const Isa best = [] {
    if (isa_available(Isa::avx2)) return Isa::avx2;
    if (isa_available(Isa::neon)) return Isa::neon;
    return Isa::scalar;
  }();
  return best;
}

void hermitian_forms(Isa isa, const PackedHermitian& h, const VectorBatch& x,
                     std::span<double> out) {
  if (x.dim != h.n) throw InvalidParameter("batch dimension does not match matrix");
  if (out.size() < x.count) throw InvalidParameter("output span too small");
  if (!isa_available(isa)) throw InvalidParameter("kernel variant not available on this CPU");
  switch (isa) {
#if defined(NORMALOID_HAVE_AVX2)
    case Isa::avx2:
      detail::hermitian_forms_avx2(h, x, out.data());
      return;
#endif
#if defined(NORMALOID_HAVE_NEON)
    case Isa::neon:
      detail::hermitian_forms_neon(h, x, out.data());
      return;
#endif
    default:
      detail::hermitian_forms_scalar(h, x, 0, x.count, out.data());
  }
}

}  // namespace normaloid::kernels
