#pragma once

// Time-domain fields: the propagator g(x, x', tau) and the field of an
// incident Gaussian packet, for normal and fixed-k_par oblique incidence.

#include <cstddef>
#include <utility>
#include <vector>

#include "trilayer/media.hpp"
#include "trilayer/quadrature.hpp"
#include "trilayer/simd/oscillatory_sum.hpp"

namespace trilayer {

/// Initial field C exp(-(x - x_i)^2 / (2 sigma_x^2)) cos(k0 . r), physical units.
struct IncidentPacket {
  double amplitude = 1.0;
  double x_i = -5.0;
  double sigma_x = 0.2;
  double k0_x = 1.0;
  double k0_par = 0.0;
  double omega0 = 1.0;

  /// Builds the packet whose carrier satisfies omega0 = v1 |k0|.
  static IncidentPacket from_carrier(const TrilayerMedium& medium, double omega0, double x_i,
                                     double sigma_x, double k0_par = 0.0,
                                     double amplitude = 1.0);

  /// Throws InvalidArgument unless x_i < 0, sigma_x > 0, k0_x > 0,
  /// k0_par >= 0 and omega0 = v1 |k0| (relative 1e-12).
  void validate(const TrilayerMedium& medium) const;
};

struct FieldSample {
  double x = 0.0;
  double t = 0.0;
  double f_plus = 0.0;
  double f_minus = 0.0;
  double f = 0.0;
  double error = 0.0;  ///< quadrature error bound on each component
  bool shortfall = false;
};

/// Plain integrates d omega only, which reproduces the homogeneous limit
/// C/2 cos. Omega adds an extra omega factor and is kept for comparison.
enum class SpectralWeight { plain, omega };

/// Restriction of the layer-1 field to its incident or reflected wave.
/// Only meaningful for receivers with x < 0.
enum class Layer1Part { full, incident, reflected };

struct QuadratureSettings {
  double tol = 1e-10;
  double truncation_widths = 7.5;
  int max_refinements = 3;
  simd::KernelChoice kernel = simd::KernelChoice::automatic;
};

struct FieldOptions {
  QuadratureSettings quad;
  SpectralWeight weight = SpectralWeight::plain;
  Layer1Part part = Layer1Part::full;
};

/// The packet problem in units of d and d/v2.
struct NormalProblem {
  double r1 = 1.0;  ///< v2 / v1
  double r3 = 1.0;  ///< v2 / v3
  double x_i = -5.0;
  double sigma = 0.2;
  double omega0 = 1.0;
  double amplitude = 1.0;

  static NormalProblem from(const TrilayerMedium& medium, const IncidentPacket& packet);
  /// 1 / min(r1, 1, r3): inverse of the slowest scaled velocity.
  double max_slowness() const noexcept;
  /// Standard deviation of the spectral envelope in omega.
  double envelope_width() const noexcept { return 1.0 / (r1 * sigma); }
};

/// phi(x, x_i; omega; +-omega0) of the scaled problem. Throws
/// UnsupportedRegion if part != full and x >= 0.
cplx packet_profile(const NormalProblem& problem, double x, double omega, double carrier,
                    Layer1Part part = Layer1Part::full);

/// Quadrature layout shared by the normal and oblique paths at one receiver.
OscillatorySpec normal_spectrum_spec(const NormalProblem& problem, double x, double t_max,
                                     double truncation_widths);

/// Spectral table of one receiver x: at each node the coefficients of
/// cos(omega t) and sin(omega t). Valid for |t| <= t_max.
class PacketSpectrum {
 public:
  PacketSpectrum(const NormalProblem& problem, double x, double t_max,
                 const FieldOptions& options, int refinement);

  double x() const noexcept { return x_; }
  double t_max() const noexcept { return t_max_; }
  int refinement() const noexcept { return refinement_; }
  std::size_t nodes() const noexcept { return omega_.size(); }

  /// f+, f- at time t through the chosen kernel. Requires |t| <= t_max.
  FieldSample evaluate(double t, simd::Kernel kernel) const;

 private:
  double x_;
  double t_max_;
  int refinement_;
  double scale_;
  std::vector<double> omega_;
  std::vector<double> a_;
  std::vector<double> b_;
  std::vector<double> ea_;
  std::vector<double> eb_;
};

/// f+-(x, t) in scaled coordinates, refining until the error is below
/// options.quad.tol or refinements run out. x_i < 0 and k0_par = 0.
FieldSample packet_field_normal(double x, double t, const TrilayerMedium& medium,
                                const IncidentPacket& packet, const FieldOptions& options = {});

/// Scalar reference: the same integral through the generic integrator.
FieldSample packet_field_normal_direct(double x, double t, const TrilayerMedium& medium,
                                       const IncidentPacket& packet,
                                       const FieldOptions& options = {});

/// Fixed-k_par field in physical units. rho_dot_kpar is the in-plane
/// coordinate along k0_par, so the lateral phase is k0_par * rho_dot_kpar.
/// At k0_par = 0 this equals packet_field_normal on a normalized medium.
FieldSample packet_field_oblique(double x, double rho_dot_kpar, double t,
                                 const TrilayerMedium& medium, const IncidentPacket& packet,
                                 const FieldOptions& options = {});

/// sigma -> infinity limit, scaled coordinates. Independent of x_i.
std::pair<double, double> plane_wave_limit(double x, double t, const TrilayerMedium& medium,
                                           double omega0, double amplitude = 1.0);

/// (v2/v1)^2 sigma^2 / 2: the larger, the weaker the backward component.
double backward_weight(const TrilayerMedium& medium, double sigma_tilde) noexcept;

/// Integral over omega >= 0 of |phi(x, x_i; omega; -omega0)|.
double backward_magnitude(double x, const TrilayerMedium& medium, const IncidentPacket& packet,
                          double tol = 1e-12);

struct PropagatorOptions {
  /// Width of the Gaussian time smoothing in units of d/v2.
  double time_resolution = 0.005;
  double tol = 1e-10;
  double truncation_widths = 7.5;
  int max_refinements = 3;
  unsigned threads = 1;
  simd::KernelChoice kernel = simd::KernelChoice::automatic;
};

struct PropagatorSample {
  double value = 0.0;
  double error = 0.0;
  bool shortfall = false;
};

/// Im G+(x, x') times the time smoothing and the quadrature weights of one
/// refinement level, valid for |tau| <= tau_max.
class PropagatorSpectrum {
 public:
  PropagatorSpectrum(double x, double x_prime, const TrilayerMedium& medium, double k_par,
                     double tau_max, const PropagatorOptions& options, int refinement);

  double tau_max() const noexcept { return tau_max_; }
  std::size_t nodes() const noexcept { return omega_.size(); }

  /// Odd in tau by construction. Requires |tau| <= tau_max.
  PropagatorSample evaluate(double tau, simd::Kernel kernel) const;

 private:
  double tau_max_;
  std::vector<double> omega_;
  std::vector<double> zero_;
  std::vector<double> b_;
  std::vector<double> eb_;
};

/// propagator_sample at every tau, sharing the spectral table between them.
std::vector<PropagatorSample> propagator_samples(double x, double x_prime,
                                                 const std::vector<double>& taus,
                                                 const TrilayerMedium& medium, double k_par = 0.0,
                                                 const PropagatorOptions& options = {});

/// (2/pi) int_{v1 k_par}^inf sin(omega tau) Im G+(x, x') d omega, the
/// exact propagator smoothed in tau by a Gaussian of time_resolution.
PropagatorSample propagator_sample(double x, double x_prime, double tau,
                                   const TrilayerMedium& medium, double k_par = 0.0,
                                   const PropagatorOptions& options = {});

double propagator_g(double x, double x_prime, double tau, const TrilayerMedium& medium,
                    double k_par = 0.0, const PropagatorOptions& options = {});

/// -(1/2v) theta(v|t| - |x - x'|) sign(t).
double free_propagator_closed(double x, double x_prime, double t, double v) noexcept;

}  // namespace trilayer
