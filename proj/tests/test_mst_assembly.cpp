#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "trilayer/errors.hpp"
#include "trilayer/mst_assembly.hpp"
#include "trilayer/trilayer_green.hpp"

using namespace trilayer;

namespace {

constexpr cplx kI{0.0, 1.0};

struct Draw {
  TrilayerMedium medium;
  SpectralPoint point;
};

Draw random_draw(std::mt19937_64& rng) {
  const TrilayerMedium m(oracle::uniform(rng, 0.2, 3.0), oracle::uniform(rng, 0.2, 3.0),
                         oracle::uniform(rng, 0.2, 3.0), oracle::uniform(rng, 0.1, 3.0));
  const double omega = oracle::uniform(rng, 0.05, 12.0);
  const double kpar = oracle::uniform(rng, 0.0, 0.95 * omega / std::max({m.v1(), m.v2(), m.v3()}));
  return {m, SpectralPoint::at(m, omega, kpar)};
}

double rel(const cplx& a, const cplx& b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("free Green function examples") {
  const TrilayerMedium m(1.0, 1.0, 1.0, 1.0);
  const SpectralPoint p = SpectralPoint::at(m, 1.0);
  CHECK(std::abs(free_green(-0.3, -0.3, Layer::left, m, p) + 0.5 * kI) <= 1e-16);
  const cplx flipped = free_green(-std::numbers::pi, 0.0, Layer::left, m, p);
  CHECK(std::abs(flipped - 0.5 * kI) <= 1e-15);

  const TrilayerMedium slow(1.0, 1.0, 0.5, 1.0);
  const SpectralPoint ev = SpectralPoint::at(slow, 1.0, 1.5);
  const double kappa = ev.k(Layer::left).imag();
  REQUIRE(kappa > 0.0);
  const double g0 = std::abs(free_green(-1.0, -1.0, Layer::left, slow, ev));
  for (double dist : {0.5, 1.0, 2.0}) {
    const double g = std::abs(free_green(-1.0 - dist, -1.0, Layer::left, slow, ev));
    CHECK(g == doctest::Approx(g0 * std::exp(-kappa * dist)).epsilon(1e-14));
  }
}

TEST_CASE("free Green function guards its layer and the cutoff") {
  const TrilayerMedium m(1.0, 2.0, 1.0, 1.0);
  const SpectralPoint p = SpectralPoint::at(m, 1.0);
  CHECK_THROWS_AS(free_green(0.5, -1.0, Layer::left, m, p), UnsupportedRegion);
  CHECK_THROWS_AS(free_green(1.5, 0.5, Layer::spacer, m, p), UnsupportedRegion);
  CHECK_NOTHROW(free_green(0.0, 1.0, Layer::spacer, m, p));
  const SpectralPoint cut = SpectralPoint::at(m, 2.0, 2.0);
  CHECK_THROWS_AS(free_green(-1.0, -2.0, Layer::left, m, cut), ChannelCutoff);
}

TEST_CASE("homogeneous limit of the composite amplitudes") {
  const TrilayerMedium m(1.3, 1.3, 1.3, 0.7);
  const SpectralPoint p = SpectralPoint::at(m, 2.1, 0.4);
  const CompositeAmplitudes c = composite_amplitudes(m, p);
  CHECK(c.D == cplx(1.0));
  CHECK(c.R == cplx(0.0));
  CHECK(c.R_prime == cplx(0.0));
  for (double x : {-2.0, -0.5}) {
    for (double xp : {-1.7, -0.1}) {
      CHECK(std::abs(assembled_green(x, xp, m, p) - free_green(x, xp, Layer::left, m, p)) <=
            1e-15);
    }
  }
}

TEST_CASE("assembled transmission at the symmetric resonance") {
  const TrilayerMedium m(0.5, 1.0, 0.5, 1.0);
  const SpectralPoint p = SpectralPoint::at(m, std::numbers::pi);
  const CompositeAmplitudes c = composite_amplitudes(m, p);
  // T_full = 2i v1 v3 sqrt(k1 k3) t.
  const cplx k1 = p.k(Layer::left);
  const cplx k3 = p.k(Layer::right);
  const cplx t = c.T_full / (2.0 * kI * m.v1() * m.v3() * std::sqrt(k1 * k3));
  CHECK(std::norm(t) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(c.R) <= 1e-12 * std::abs(c.T_full));
}

TEST_CASE("composite transmission equals the closed-form amplitude") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 1000; ++i) {
    const Draw s = random_draw(rng);
    const CompositeAmplitudes c = composite_amplitudes(s.medium, s.point);
    const AmplitudeSet a = amplitude_set(s.medium, s.point);
    const cplx k1 = s.point.k(Layer::left);
    const cplx k3 = s.point.k(Layer::right);
    const cplx t = c.T_full / (2.0 * kI * s.medium.v1() * s.medium.v3() * std::sqrt(k1 * k3));
    CHECK(rel(t, a.t) <= 1e-12);
    const cplx r = c.R / (2.0 * kI * s.medium.v1() * s.medium.v1() * k1);
    CHECK(std::abs(r - a.r) <= 1e-12);
  }
}

TEST_CASE("assembled Green function equals the closed forms in all five region pairs") {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 1000; ++i) {
    const Draw s = random_draw(rng);
    const double d = s.medium.width();
    const double left_a = -oracle::uniform(rng, 0.01, 3.0);
    const double left_b = -oracle::uniform(rng, 0.01, 3.0);
    const double right = d + oracle::uniform(rng, 0.01, 3.0);
    const double inner = oracle::uniform(rng, 0.0, d);
    const std::pair<double, double> pairs[] = {
        {right, left_a}, {left_a, right}, {inner, left_a}, {left_a, inner}, {left_a, left_b}};
    for (const auto& [x, xp] : pairs) {
      const cplx closed = green_retarded(x, xp, s.medium, s.point);
      CHECK(rel(assembled_green(x, xp, s.medium, s.point), closed) <= 1e-12);
    }
  }
}

TEST_CASE("assembled Green function is symmetric on mirrored pairs") {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 500; ++i) {
    const Draw s = random_draw(rng);
    const double d = s.medium.width();
    const double l = -oracle::uniform(rng, 0.01, 3.0);
    const double r = d + oracle::uniform(rng, 0.01, 3.0);
    const double in = oracle::uniform(rng, 0.0, d);
    CHECK(rel(assembled_green(r, l, s.medium, s.point), assembled_green(l, r, s.medium, s.point)) <=
          1e-12);
    CHECK(rel(assembled_green(in, l, s.medium, s.point),
              assembled_green(l, in, s.medium, s.point)) <= 1e-12);
  }
}

TEST_CASE("region pairs without a closed form are rejected") {
  const TrilayerMedium m(0.5, 1.0, 0.5, 1.0);
  const SpectralPoint p = SpectralPoint::at(m, 1.0);
  CHECK_THROWS_AS(assembled_green(0.2, 0.7, m, p), UnsupportedRegion);
  CHECK_THROWS_AS(assembled_green(1.5, 2.5, m, p), UnsupportedRegion);
  CHECK_THROWS_AS(assembled_green(1.5, 0.5, m, p), UnsupportedRegion);
}
