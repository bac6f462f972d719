#include "trilayer/mst_assembly.hpp"

#include <cmath>
#include <string>

#include "trilayer/errors.hpp"
#include "trilayer/step_scattering.hpp"
#include "trilayer/trilayer_green.hpp"

namespace trilayer {

namespace {

constexpr cplx kI{0.0, 1.0};

bool in_closed_layer(double x, Layer layer, double d) {
  switch (layer) {
    case Layer::left: return x <= 0.0;
    case Layer::spacer: return x >= 0.0 && x <= d;
    case Layer::right: return x >= d;
  }
  return false;
}

}  // namespace

cplx free_green(double x, double x_prime, Layer layer, const TrilayerMedium& medium,
                const SpectralPoint& p) {
  if (!in_closed_layer(x, layer, medium.width()) ||
      !in_closed_layer(x_prime, layer, medium.width())) {
    throw UnsupportedRegion("free_green: points outside layer " +
                            std::to_string(static_cast<int>(layer)));
  }
  const cplx k = p.k(layer);
  if (k.real() == 0.0 && k.imag() == 0.0) {
    throw ChannelCutoff("free Green function diverges at k_perp = 0");
  }
  const double v = medium.velocity(layer);
  return std::exp(kI * k * std::abs(x - x_prime)) / (2.0 * kI * v * v * k);
}

CompositeAmplitudes composite_amplitudes(const TrilayerMedium& medium,
                                         const SpectralPoint& p) {
  const StepContext s0 = interface_context(medium, p, Interface::at_zero);
  const StepContext sd = interface_context(medium, p, Interface::at_d);
  const double d = medium.width();

  const cplx t0_gt = t_matrix(s0, Channel::reflect_gt);
  const cplx t0_lt = t_matrix(s0, Channel::reflect_lt);
  const cplx t0_x = t_matrix(s0, Channel::cross);
  const cplx td_lt = t_matrix(sd, Channel::reflect_lt);
  const cplx td_x = t_matrix(sd, Channel::cross);

  const cplx g_d0 = free_green(d, 0.0, Layer::spacer, medium, p);
  const cplx g_0d = free_green(0.0, d, Layer::spacer, medium, p);

  CompositeAmplitudes c;
  c.D = 1.0 - g_d0 * t0_gt * g_0d * td_lt;
  if (c.D.real() == 0.0 && c.D.imag() == 0.0) {
    throw PoleError("multiple-scattering denominator D = 0");
  }
  c.T_full = td_x * g_d0 * t0_x / c.D;
  c.T_prime = t0_x / c.D;
  c.R_prime = td_lt * g_d0 * c.T_prime;
  c.R = t0_lt + t0_x * g_0d * td_lt * g_d0 * t0_x / c.D;
  return c;
}

cplx assembled_green(double x, double x_prime, const TrilayerMedium& medium,
                     const SpectralPoint& p) {
  const RegionPair pair = require_region_pair(x, x_prime, medium);
  const double d = medium.width();
  const CompositeAmplitudes c = composite_amplitudes(medium, p);

  switch (pair) {
    case RegionPair::left_to_right:
      return free_green(x, d, Layer::right, medium, p) * c.T_full *
             free_green(0.0, x_prime, Layer::left, medium, p);
    case RegionPair::right_to_left:
      return free_green(x, 0.0, Layer::left, medium, p) * c.T_full *
             free_green(d, x_prime, Layer::right, medium, p);
    case RegionPair::left_to_spacer: {
      const cplx src = free_green(0.0, x_prime, Layer::left, medium, p);
      return free_green(x, 0.0, Layer::spacer, medium, p) * c.T_prime * src +
             free_green(x, d, Layer::spacer, medium, p) * c.R_prime * src;
    }
    case RegionPair::spacer_to_left: {
      const cplx obs = free_green(x, 0.0, Layer::left, medium, p);
      return obs * c.T_prime * free_green(0.0, x_prime, Layer::spacer, medium, p) +
             obs * c.R_prime * free_green(d, x_prime, Layer::spacer, medium, p);
    }
    case RegionPair::left_to_left:
      return free_green(x, x_prime, Layer::left, medium, p) +
             free_green(x, 0.0, Layer::left, medium, p) * c.R *
                 free_green(0.0, x_prime, Layer::left, medium, p);
  }
  return {};
}

}  // namespace trilayer
