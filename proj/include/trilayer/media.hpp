#pragma once

#include <array>
#include <complex>

namespace trilayer {

using cplx = std::complex<double>;

/// Layers of the three-layer medium. Interfaces sit at x = 0 and x = d.
enum class Layer : int { left = 1, spacer = 2, right = 3 };

/// Piecewise-constant phase velocity profile: v1 for x < 0, v2 inside the
/// spacer [0, d], v3 for x > d.
class TrilayerMedium {
 public:
  TrilayerMedium(double v1, double v2, double v3, double d);

  double v1() const noexcept { return v_[0]; }
  double v2() const noexcept { return v_[1]; }
  double v3() const noexcept { return v_[2]; }
  double width() const noexcept { return d_; }
  double velocity(Layer layer) const noexcept {
    return v_[static_cast<int>(layer) - 1];
  }
  double min_velocity() const noexcept;
  bool homogeneous() const noexcept { return v_[0] == v_[1] && v_[1] == v_[2]; }

  friend bool operator==(const TrilayerMedium&, const TrilayerMedium&) = default;

 private:
  std::array<double, 3> v_;
  double d_;
};

struct LayerInfo {
  Layer layer;
  double velocity;
};

/// Interface points belong to the spacer: x == 0 and x == d map to Layer::spacer.
LayerInfo layer_of(double x, const TrilayerMedium& medium) noexcept;

/// sqrt(omega^2/v^2 - k_par^2) on the branch with Im >= 0. Real and
/// non-negative in the propagating regime omega >= v * k_par.
cplx perp_wavevector(double omega, double k_par, double v) noexcept;

/// (omega, k_par) together with the perpendicular wave vectors of all
/// three layers.
struct SpectralPoint {
  double omega = 0.0;
  double k_par = 0.0;
  std::array<cplx, 3> kperp{};

  static SpectralPoint at(const TrilayerMedium& medium, double omega,
                          double k_par = 0.0) noexcept;

  const cplx& k(Layer layer) const noexcept {
    return kperp[static_cast<int>(layer) - 1];
  }
  /// True when every k_perp is real.
  bool propagating() const noexcept;
};

/// Natural units of the problem: lengths in d, times in d/v2, frequencies
/// in v2/d.
class ScaleSystem {
 public:
  explicit ScaleSystem(const TrilayerMedium& medium) noexcept
      : d_(medium.width()), v2_(medium.v2()) {}

  double length_unit() const noexcept { return d_; }
  double velocity_unit() const noexcept { return v2_; }
  double omega_d() const noexcept { return v2_ / d_; }
  double t_d() const noexcept { return d_ / v2_; }

  /// The same medium expressed in natural units (d = 1, v2 = 1).
  TrilayerMedium normalized(const TrilayerMedium& medium) const;

 private:
  double d_;
  double v2_;
};

/// Quantities that enter the packet problem. Positions and widths are
/// lengths, k_par a wave number.
struct Coordinates {
  double x = 0.0;
  double t = 0.0;
  double omega = 0.0;
  double sigma_x = 0.0;
  double x_i = 0.0;
  double k_par = 0.0;

  friend bool operator==(const Coordinates&, const Coordinates&) = default;
};

Coordinates to_dimensionless(const Coordinates& physical, const TrilayerMedium& medium) noexcept;
Coordinates from_dimensionless(const Coordinates& scaled, const TrilayerMedium& medium) noexcept;

}  // namespace trilayer
