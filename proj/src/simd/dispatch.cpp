#include <cmath>
#include <string>

#include "trilayer/errors.hpp"
#include "trilayer/simd/oscillatory_sum.hpp"

#if defined(TRILAYER_HAVE_AVX2)
#include "avx2_entry.hpp"
#endif

namespace trilayer::simd {

bool avx2_available() noexcept {
#if defined(TRILAYER_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported;
#else
  return false;
#endif
}

Kernel resolve_kernel(KernelChoice choice) {
  switch (choice) {
    case KernelChoice::scalar:
      return Kernel::scalar;
    case KernelChoice::avx2:
      if (!avx2_available()) throw InvalidArgument("avx2 kernel requested but not available");
      return Kernel::avx2;
    case KernelChoice::automatic:
      break;
  }
  return avx2_available() ? Kernel::avx2 : Kernel::scalar;
}

std::string_view kernel_name(Kernel kernel) noexcept {
  return kernel == Kernel::avx2 ? "avx2" : "scalar";
}

KernelChoice parse_kernel_choice(std::string_view text) {
  if (text == "auto") return KernelChoice::automatic;
  if (text == "scalar") return KernelChoice::scalar;
  if (text == "avx2") return KernelChoice::avx2;
  throw InvalidArgument("unknown kernel '" + std::string(text) + "' (auto|scalar|avx2)");
}

OscillatorySums oscillatory_sums_avx2(const SpectralColumns& cols, double t) noexcept {
#if defined(TRILAYER_HAVE_AVX2)
  const std::size_t n = cols.omega.size();
  if (avx2_available() && cols.panel_size != 0 && cols.panel_size % 4 == 0 &&
      n % cols.panel_size == 0) {
    double out[3];
    detail::oscillatory_sums_avx2_raw(cols.omega.data(), cols.a.data(), cols.b.data(),
                                      cols.ea.data(), cols.eb.data(), n, cols.panel_size, t,
                                      out);
    return {out[0], out[1], out[2]};
  }
#endif
  return oscillatory_sums_scalar(cols, t);
}

OscillatorySums oscillatory_sums(Kernel kernel, const SpectralColumns& cols, double t) noexcept {
  if (kernel == Kernel::avx2 && std::abs(t) * cols.max_abs_omega <= kVectorSinCosLimit) {
    return oscillatory_sums_avx2(cols, t);
  }
  return oscillatory_sums_scalar(cols, t);
}

void sincos_avx2(std::span<const double> x, std::span<double> s, std::span<double> c) noexcept {
#if defined(TRILAYER_HAVE_AVX2)
  if (avx2_available()) {
    detail::sincos_avx2_raw(x.data(), s.data(), c.data(), x.size());
    return;
  }
#endif
  sincos_scalar(x, s, c);
}

}  // namespace trilayer::simd
