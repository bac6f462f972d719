#include <cmath>

#include "trilayer/simd/oscillatory_sum.hpp"

namespace trilayer::simd {

OscillatorySums oscillatory_sums_scalar(const SpectralColumns& cols, double t) noexcept {
  OscillatorySums out;
  const std::size_t n = cols.omega.size();
  const std::size_t panel = cols.panel_size == 0 ? n : cols.panel_size;
  for (std::size_t base = 0; base < n; base += panel) {
    const std::size_t end = base + panel < n ? base + panel : n;
    double pe_c = 0.0;
    double pe_s = 0.0;
    for (std::size_t i = base; i < end; ++i) {
      const double x = cols.omega[i] * t;
      const double c = std::cos(x);
      const double s = std::sin(x);
      out.cos_sum += cols.a[i] * c;
      out.sin_sum += cols.b[i] * s;
      pe_c += cols.ea[i] * c;
      pe_s += cols.eb[i] * s;
    }
    out.error += std::abs(pe_c) + std::abs(pe_s);
  }
  return out;
}

void sincos_scalar(std::span<const double> x, std::span<double> s, std::span<double> c) noexcept {
  for (std::size_t i = 0; i < x.size(); ++i) {
    s[i] = std::sin(x[i]);
    c[i] = std::cos(x[i]);
  }
}

}  // namespace trilayer::simd
