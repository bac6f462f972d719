#pragma once

// Data-parallel core of the time sweep: for a fixed set of frequency nodes
// omega_j and coefficients a_j, b_j the field at time t needs
//
//   C(t) = sum_j a_j cos(omega_j t),   S(t) = sum_j b_j sin(omega_j t)
//
// plus an error estimate accumulated per quadrature panel. The scalar
// kernel is the reference; the AVX2 kernel must agree with it to rounding.

#include <cstddef>
#include <span>
#include <string_view>

namespace trilayer::simd {

/// Column layout of a spectral table. All spans have the same length, a
/// multiple of panel_size. ea/eb carry (K15 - G7)-weighted coefficients.
struct SpectralColumns {
  std::span<const double> omega;
  std::span<const double> a;
  std::span<const double> b;
  std::span<const double> ea;
  std::span<const double> eb;
  std::size_t panel_size = 16;
  double max_abs_omega = 0.0;
};

struct OscillatorySums {
  double cos_sum = 0.0;
  double sin_sum = 0.0;
  /// sum over panels of |sum ea cos| + |sum eb sin|
  double error = 0.0;
};

enum class Kernel { scalar, avx2 };
enum class KernelChoice { automatic, scalar, avx2 };

/// True when the AVX2 kernel was compiled in and the CPU supports AVX2+FMA.
bool avx2_available() noexcept;

/// Throws trilayer::InvalidArgument when avx2 is requested but unavailable.
Kernel resolve_kernel(KernelChoice choice);

std::string_view kernel_name(Kernel kernel) noexcept;
KernelChoice parse_kernel_choice(std::string_view text);

OscillatorySums oscillatory_sums_scalar(const SpectralColumns& cols, double t) noexcept;
OscillatorySums oscillatory_sums_avx2(const SpectralColumns& cols, double t) noexcept;

/// Dispatches to the requested kernel. Arguments |omega t| beyond the range
/// of the vector argument reduction fall back to the scalar kernel.
OscillatorySums oscillatory_sums(Kernel kernel, const SpectralColumns& cols, double t) noexcept;

/// Largest |x| accepted by the vector sine/cosine.
inline constexpr double kVectorSinCosLimit = 1.0e6;

void sincos_scalar(std::span<const double> x, std::span<double> s, std::span<double> c) noexcept;
/// Requires avx2_available(); n need not be a multiple of 4.
void sincos_avx2(std::span<const double> x, std::span<double> s, std::span<double> c) noexcept;

}  // namespace trilayer::simd
