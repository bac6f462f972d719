#pragma once

#include "trilayer/media.hpp"

namespace trilayer {

/// Two-interface amplitudes built from single-interface T-matrices and free
/// propagation across the spacer.
struct CompositeAmplitudes {
  cplx T_full;   ///< through both interfaces
  cplx T_prime;  ///< into the spacer through interface 0
  cplx R_prime;  ///< into the spacer after one bounce off interface d
  cplx R;        ///< back into layer 1
  cplx D;        ///< 1 - G0(d,0) T0_> G0(0,d) Td_<
};

/// exp(i k|x - x'|) / (2i v^2 k) in the named layer. Both points must lie in
/// the closed layer interval. Throws ChannelCutoff at k_perp = 0.
cplx free_green(double x, double x_prime, Layer layer, const TrilayerMedium& medium,
                const SpectralPoint& p);

CompositeAmplitudes composite_amplitudes(const TrilayerMedium& medium,
                                         const SpectralPoint& p);

/// Green function from products of free propagators and composite
/// amplitudes. Supports the same five region pairs as green_retarded.
cplx assembled_green(double x, double x_prime, const TrilayerMedium& medium,
                     const SpectralPoint& p);

}  // namespace trilayer
