#pragma once

// Reference solutions built without the library: transfer matrices for the
// stationary problem, erf for truncated Gaussians, and d'Alembert for the
// free packet.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr cplx kI{0.0, 1.0};

struct Scattering {
  cplx r;  ///< reflected amplitude for unit incidence from the left
  cplx t;  ///< flux-normalized transmitted amplitude
};

/// f'' + k(x)^2 f = 0 with f, f' continuous. Layer 3 carries
/// tau exp(i k3 (x - d)); integrate back to x = 0 and split into the
/// incident and reflected waves of layer 1.
inline Scattering trilayer_tmm(double k1, double k2, double k3, double d) {
  const cplx a = 0.5 * (1.0 + k3 / k2) * std::exp(-kI * k2 * d);
  const cplx b = 0.5 * (1.0 - k3 / k2) * std::exp(kI * k2 * d);
  const cplx f0 = a + b;
  const cplx df0 = kI * k2 * (a - b);
  const cplx in = 0.5 * (f0 + df0 / (kI * k1));
  const cplx out = 0.5 * (f0 - df0 / (kI * k1));
  return {out / in, std::sqrt(k3 / k1) / in};
}

/// Stationary field for unit incidence from the left, at any x.
inline cplx trilayer_field(double k1, double k2, double k3, double d, double x) {
  const cplx a = 0.5 * (1.0 + k3 / k2) * std::exp(-kI * k2 * d);
  const cplx b = 0.5 * (1.0 - k3 / k2) * std::exp(kI * k2 * d);
  const cplx f0 = a + b;
  const cplx df0 = kI * k2 * (a - b);
  const cplx in = 0.5 * (f0 + df0 / (kI * k1));
  const cplx out = 0.5 * (f0 - df0 / (kI * k1));
  if (x < 0.0) return (std::exp(kI * k1 * x) + out / in * std::exp(-kI * k1 * x));
  if (x <= d) return (a * std::exp(kI * k2 * x) + b * std::exp(-kI * k2 * x)) / in;
  return std::exp(kI * k3 * (x - d)) / in;
}

/// Continuous Green function of f'' + k^2 f = delta / v1^2 for a source
/// x_src < 0: the Wronskian construction e^{-i k1 x_src} u(x) / (2 i k1 v1^2).
inline cplx wronskian_green(double k1, double k2, double k3, double d, double v1, double x,
                            double x_src) {
  if (x < x_src) {
    return std::exp(-kI * k1 * x) * trilayer_field(k1, k2, k3, d, x_src) /
           (2.0 * kI * k1 * v1 * v1);
  }
  return std::exp(-kI * k1 * x_src) * trilayer_field(k1, k2, k3, d, x) /
         (2.0 * kI * k1 * v1 * v1);
}

/// Single step from k_lt (x < 0) to k_gt (x > 0).
inline Scattering step_tmm(double k_lt, double k_gt) {
  // 1 + r = tau, k_lt (1 - r) = k_gt tau
  const double tau = 2.0 * k_lt / (k_lt + k_gt);
  return {cplx(tau - 1.0), cplx(std::sqrt(k_gt / k_lt) * tau)};
}

/// Integral of exp(-(w - c)^2 / (2 s^2)) over [lo, hi].
inline double gaussian_integral(double c, double s, double lo, double hi) {
  const double k = s * std::sqrt(std::numbers::pi / 2.0);
  return k * (std::erf((hi - c) / (s * std::numbers::sqrt2)) -
              std::erf((lo - c) / (s * std::numbers::sqrt2)));
}

/// Integral over the real line of exp(i w tau) exp(-(w - c)^2 / (2 s^2)).
inline cplx gaussian_fourier(double c, double s, double tau) {
  return s * std::sqrt(2.0 * std::numbers::pi) * std::exp(kI * (c * tau)) *
         std::exp(-0.5 * s * s * tau * tau);
}

/// Initial profile C exp(-(y - xi)^2 / (2 sigma^2)) cos(w0 y) of unit speed.
inline double initial_packet(double y, double c, double xi, double sigma, double w0) {
  const double u = (y - xi) / sigma;
  return c * std::exp(-0.5 * u * u) * std::cos(w0 * y);
}

/// Unit-speed solution with zero initial velocity: [g(x - t) + g(x + t)] / 2.
inline double dalembert(double x, double t, double c, double xi, double sigma, double w0) {
  return 0.5 * (initial_packet(x - t, c, xi, sigma, w0) +
                initial_packet(x + t, c, xi, sigma, w0));
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace oracle
