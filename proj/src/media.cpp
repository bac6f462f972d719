#include "trilayer/media.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trilayer/errors.hpp"

namespace trilayer {

namespace {

bool positive_finite(double value) { return std::isfinite(value) && value > 0.0; }

}  // namespace

TrilayerMedium::TrilayerMedium(double v1, double v2, double v3, double d)
    : v_{v1, v2, v3}, d_(d) {
  for (int i = 0; i < 3; ++i) {
    if (!positive_finite(v_[i])) {
      throw InvalidArgument("velocity v" + std::to_string(i + 1) +
                            " must be positive and finite");
    }
  }
  if (!positive_finite(d)) {
    throw InvalidArgument("spacer width d must be positive and finite");
  }
}

double TrilayerMedium::min_velocity() const noexcept {
  return std::min({v_[0], v_[1], v_[2]});
}

LayerInfo layer_of(double x, const TrilayerMedium& medium) noexcept {
  if (x < 0.0) return {Layer::left, medium.v1()};
  if (x > medium.width()) return {Layer::right, medium.v3()};
  return {Layer::spacer, medium.v2()};
}

cplx perp_wavevector(double omega, double k_par, double v) noexcept {
  const double k = omega / v;
  // Factored form keeps the cutoff omega == v k_par exact.
  const double s = (k - k_par) * (k + k_par);
  if (s >= 0.0) return {std::sqrt(s), 0.0};
  return {0.0, std::sqrt(-s)};
}

SpectralPoint SpectralPoint::at(const TrilayerMedium& medium, double omega,
                                double k_par) noexcept {
  SpectralPoint p;
  p.omega = omega;
  p.k_par = k_par;
  p.kperp = {perp_wavevector(omega, k_par, medium.v1()),
             perp_wavevector(omega, k_par, medium.v2()),
             perp_wavevector(omega, k_par, medium.v3())};
  return p;
}

bool SpectralPoint::propagating() const noexcept {
  return std::all_of(kperp.begin(), kperp.end(),
                     [](const cplx& k) { return k.imag() == 0.0; });
}

TrilayerMedium ScaleSystem::normalized(const TrilayerMedium& medium) const {
  return TrilayerMedium(medium.v1() / v2_, 1.0, medium.v3() / v2_, 1.0);
}

Coordinates to_dimensionless(const Coordinates& physical,
                             const TrilayerMedium& medium) noexcept {
  const double d = medium.width();
  const double v2 = medium.v2();
  Coordinates s;
  s.x = physical.x / d;
  s.t = physical.t * v2 / d;
  s.omega = physical.omega * d / v2;
  s.sigma_x = physical.sigma_x / d;
  s.x_i = physical.x_i / d;
  s.k_par = physical.k_par * d;
  return s;
}

Coordinates from_dimensionless(const Coordinates& scaled,
                               const TrilayerMedium& medium) noexcept {
  const double d = medium.width();
  const double v2 = medium.v2();
  Coordinates p;
  p.x = scaled.x * d;
  p.t = scaled.t * d / v2;
  p.omega = scaled.omega * v2 / d;
  p.sigma_x = scaled.sigma_x * d;
  p.x_i = scaled.x_i * d;
  p.k_par = scaled.k_par / d;
  return p;
}

}  // namespace trilayer
