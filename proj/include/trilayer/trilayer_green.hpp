#pragma once

#include <optional>

#include "trilayer/media.hpp"

namespace trilayer {

/// The five (receiver x, source x') region pairs with a closed-form Green
/// function. Interface points count as spacer points.
enum class RegionPair {
  left_to_right,    ///< x' < 0,      x > d
  right_to_left,    ///< x' > d,      x < 0
  left_to_spacer,   ///< x' < 0,      0 <= x <= d
  spacer_to_left,   ///< 0 <= x' <= d, x < 0
  left_to_left,     ///< x' < 0,      x < 0
};

std::optional<RegionPair> region_pair(double x, double x_prime,
                                      const TrilayerMedium& medium) noexcept;

/// Like region_pair but throws UnsupportedRegion naming the pair.
RegionPair require_region_pair(double x, double x_prime, const TrilayerMedium& medium);

/// Flux-normalized amplitudes of the whole trilayer and their common
/// denominator.
struct AmplitudeSet {
  cplx t;
  cplx t_prime;
  cplx r_prime;
  cplx r;
  cplx denom;
};

/// Throws PoleError when the denominator vanishes.
AmplitudeSet amplitude_set(const TrilayerMedium& medium, const SpectralPoint& p);

/// Retarded Green function G+(x, x'; omega^2; k_par) from the region-wise
/// closed forms. Throws UnsupportedRegion, ChannelCutoff or PoleError.
cplx green_retarded(double x, double x_prime, const TrilayerMedium& medium,
                    const SpectralPoint& p);

/// G-(x, x') = conj(G+(x, x')) at real spectral points.
cplx green_advanced(double x, double x_prime, const TrilayerMedium& medium,
                    const SpectralPoint& p);

struct Probabilities {
  double transmission;
  double reflection;
};

/// |t|^2 and |r|^2 in the propagating regime. Throws EvanescentRegime if
/// any k_perp is complex.
Probabilities probabilities(const TrilayerMedium& medium, const SpectralPoint& p);

}  // namespace trilayer
