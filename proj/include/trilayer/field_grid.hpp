#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "trilayer/media.hpp"
#include "trilayer/packet.hpp"

namespace trilayer {

/// Space-time grid of packet field samples in scaled coordinates
/// (x in d, t in d/v2). Samples are row-major with x outer.
struct FieldGrid {
  std::vector<double> x_axis;
  std::vector<double> t_axis;
  std::vector<FieldSample> samples;
  std::vector<std::pair<std::string, std::string>> metadata;
  double max_error = 0.0;
  bool shortfall = false;

  const FieldSample& at(std::size_t ix, std::size_t it) const {
    return samples[ix * t_axis.size() + it];
  }
};

struct FieldGridRequest {
  TrilayerMedium medium;
  IncidentPacket packet;
  std::vector<double> x_axis;
  std::vector<double> t_axis;
  FieldOptions options{};
  /// In-plane coordinate along k0_par (scaled), used when k0_par > 0.
  double rho_dot_kpar = 0.0;
  unsigned threads = 1;
};

/// Rows are distributed over threads; every sample is computed by the same
/// sequence of operations regardless of the thread count.
FieldGrid evaluate_field_grid(const FieldGridRequest& request);

/// n >= 2 equally spaced values from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t n);

struct ResidualField {
  std::vector<double> x;  ///< receivers where the stencil fits
  std::vector<double> t;
  std::vector<double> values;  ///< row-major, x outer
  double max_abs = 0.0;
  bool too_coarse = false;  ///< a spacing exceeds 1/(8 omega0)
};

/// Fourth-order estimate of f_tt - (v(x)/v2)^2 f_xx divided by
/// max|f| omega0^2, at points two cells away from grid edges whose x
/// stencil stays inside one open layer. Requires uniform axes.
ResidualField wave_equation_residual(const FieldGrid& grid, const TrilayerMedium& medium,
                                     double omega0);

}  // namespace trilayer
