#include "trilayer/trilayer_green.hpp"

#include <cmath>
#include <string>

#include "trilayer/errors.hpp"
#include "trilayer/step_scattering.hpp"

namespace trilayer {

namespace {

constexpr cplx kI{0.0, 1.0};

bool is_zero(const cplx& z) { return z.real() == 0.0 && z.imag() == 0.0; }

void require_nonzero(const cplx& k, const char* which) {
  if (is_zero(k)) {
    throw ChannelCutoff(std::string("Green function diverges: ") + which + " = 0");
  }
}

}  // namespace

std::optional<RegionPair> region_pair(double x, double x_prime,
                                      const TrilayerMedium& medium) noexcept {
  const Layer lx = layer_of(x, medium).layer;
  const Layer ls = layer_of(x_prime, medium).layer;
  if (ls == Layer::left) {
    switch (lx) {
      case Layer::right: return RegionPair::left_to_right;
      case Layer::spacer: return RegionPair::left_to_spacer;
      case Layer::left: return RegionPair::left_to_left;
    }
  }
  if (lx == Layer::left && ls == Layer::right) return RegionPair::right_to_left;
  if (lx == Layer::left && ls == Layer::spacer) return RegionPair::spacer_to_left;
  return std::nullopt;
}

RegionPair require_region_pair(double x, double x_prime, const TrilayerMedium& medium) {
  if (auto pair = region_pair(x, x_prime, medium)) return *pair;
  const int lx = static_cast<int>(layer_of(x, medium).layer);
  const int ls = static_cast<int>(layer_of(x_prime, medium).layer);
  throw UnsupportedRegion("no closed form for receiver in layer " + std::to_string(lx) +
                          " and source in layer " + std::to_string(ls));
}

AmplitudeSet amplitude_set(const TrilayerMedium& medium, const SpectralPoint& p) {
  const cplx k1 = p.k(Layer::left);
  const cplx k2 = p.k(Layer::spacer);
  const cplx k3 = p.k(Layer::right);
  const double d = medium.width();
  const cplx e1 = std::exp(kI * k2 * d);
  const cplx e2 = e1 * e1;

  AmplitudeSet a;
  a.denom = (k1 + k2) * (k3 + k2) - (k1 - k2) * (k3 - k2) * e2;
  if (is_zero(a.denom)) throw PoleError("trilayer denominator d(omega^2) = 0");
  const cplx s1 = branch_sqrt(k1);
  const cplx s2 = branch_sqrt(k2);
  const cplx s3 = branch_sqrt(k3);
  a.t = 4.0 * s1 * s3 * k2 * e1 / a.denom;
  a.t_prime = 2.0 * s1 * s2 * (k3 + k2) / a.denom;
  a.r_prime = 2.0 * s1 * s2 * (k2 - k3) * e2 / a.denom;
  a.r = ((k1 - k2) * (k3 + k2) - (k1 + k2) * (k3 - k2) * e2) / a.denom;
  return a;
}

cplx green_retarded(double x, double x_prime, const TrilayerMedium& medium,
                    const SpectralPoint& p) {
  const RegionPair pair = require_region_pair(x, x_prime, medium);
  const cplx k1 = p.k(Layer::left);
  const cplx k2 = p.k(Layer::spacer);
  const cplx k3 = p.k(Layer::right);
  const double v1 = medium.v1();
  const double v2 = medium.v2();
  const double v3 = medium.v3();
  const double d = medium.width();

  switch (pair) {
    case RegionPair::left_to_right:
    case RegionPair::right_to_left: {
      require_nonzero(k1, "k1_perp");
      require_nonzero(k3, "k3_perp");
      const AmplitudeSet a = amplitude_set(medium, p);
      const double out = pair == RegionPair::left_to_right ? x : x_prime;
      const double in = pair == RegionPair::left_to_right ? x_prime : x;
      const cplx pre = 1.0 / (2.0 * kI * v1 * v3 * branch_sqrt(k1) * branch_sqrt(k3));
      return pre * std::exp(kI * k3 * (out - d)) * a.t * std::exp(-kI * k1 * in);
    }
    case RegionPair::left_to_spacer:
    case RegionPair::spacer_to_left: {
      require_nonzero(k1, "k1_perp");
      require_nonzero(k2, "k2_perp");
      const AmplitudeSet a = amplitude_set(medium, p);
      const double inner = pair == RegionPair::left_to_spacer ? x : x_prime;
      const double outer = pair == RegionPair::left_to_spacer ? x_prime : x;
      const cplx pre = 1.0 / (2.0 * kI * v1 * v2 * branch_sqrt(k1) * branch_sqrt(k2));
      return pre *
             (std::exp(kI * k2 * inner) * a.t_prime +
              std::exp(-kI * k2 * inner) * a.r_prime) *
             std::exp(-kI * k1 * outer);
    }
    case RegionPair::left_to_left: {
      require_nonzero(k1, "k1_perp");
      const AmplitudeSet a = amplitude_set(medium, p);
      const cplx pre = 1.0 / (2.0 * kI * v1 * v1 * k1);
      return pre * (std::exp(kI * k1 * std::abs(x - x_prime)) +
                    a.r * std::exp(-kI * k1 * (x + x_prime)));
    }
  }
  return {};
}

cplx green_advanced(double x, double x_prime, const TrilayerMedium& medium,
                    const SpectralPoint& p) {
  return std::conj(green_retarded(x, x_prime, medium, p));
}

Probabilities probabilities(const TrilayerMedium& medium, const SpectralPoint& p) {
  if (!p.propagating()) {
    throw EvanescentRegime("probabilities need real k_perp in all layers");
  }
  const double k1 = p.k(Layer::left).real();
  const double k2 = p.k(Layer::spacer).real();
  const double k3 = p.k(Layer::right).real();
  const double s = std::sin(k2 * medium.width());
  const double mix = (k1 * k1 - k2 * k2) * (k3 * k3 - k2 * k2) * s * s;
  const double den = (k1 + k3) * (k1 + k3) * k2 * k2 + mix;
  if (den == 0.0) throw PoleError("probability denominator vanishes");
  return {4.0 * k1 * k2 * k2 * k3 / den, (k2 * k2 * (k1 - k3) * (k1 - k3) + mix) / den};
}

}  // namespace trilayer
