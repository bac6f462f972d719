#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "trilayer/errors.hpp"
#include "trilayer/field_grid.hpp"

using namespace trilayer;

namespace {

constexpr double kPi = std::numbers::pi;
const TrilayerMedium kLayered(0.5, 1.0, 0.5, 1.0);

template <class F>
FieldGrid synthetic_grid(std::vector<double> xs, std::vector<double> ts, F f) {
  FieldGrid g;
  g.x_axis = std::move(xs);
  g.t_axis = std::move(ts);
  for (double x : g.x_axis) {
    for (double t : g.t_axis) {
      FieldSample s;
      s.x = x;
      s.t = t;
      s.f = f(x, t);
      g.samples.push_back(s);
    }
  }
  return g;
}

FieldGridRequest packet_request(double sigma, std::vector<double> xs, std::vector<double> ts) {
  FieldGridRequest req{kLayered, IncidentPacket::from_carrier(kLayered, kPi, -5.0, sigma), std::move(xs),
                       std::move(ts)};
  return req;
}

}  // namespace

TEST_CASE("linspace") {
  const auto v = linspace(-1.0, 2.0, 7);
  REQUIRE(v.size() == 7);
  CHECK(v.front() == -1.0);
  CHECK(v.back() == 2.0);
  CHECK(v[2] == 0.0);
  CHECK_THROWS_AS(linspace(0.0, 1.0, 1), InvalidArgument);
  CHECK_THROWS_AS(linspace(0.0, INFINITY, 4), InvalidArgument);
}

TEST_CASE("residual of an exact travelling wave falls as h^4") {
  const TrilayerMedium flat(1.0, 1.0, 1.0, 1.0);
  const double w = 1.0;
  auto wave = [&](double x, double t) { return std::cos(w * (x - t)) + 0.3 * std::sin(w * (x + t)); };
  // Unequal x and t steps: with hx == ht the two truncation errors of a
  // unit-speed wave cancel exactly and only rounding would remain.
  double prev = 0.0;
  for (int level = 0; level < 3; ++level) {
    const std::size_t n = (std::size_t{10} << level) + 1;
    const ResidualField r =
        wave_equation_residual(synthetic_grid(linspace(-3.0, -1.0, n), linspace(0.0, 3.0, n), wave),
                               flat, w);
    REQUIRE_FALSE(r.values.empty());
    if (level > 0) CHECK(prev / r.max_abs > 12.0);
    prev = r.max_abs;
  }
  CHECK(prev < 1e-6);
}

TEST_CASE("residual uses the local velocity and skips stencils across interfaces") {
  // Speed 1/2 in layer 3 relative to the spacer.
  const double w = 2.0;
  auto wave = [&](double x, double t) { return std::cos(w * (2.0 * x - t)); };
  const ResidualField r = wave_equation_residual(
      synthetic_grid(linspace(0.9, 2.0, 45), linspace(0.0, 1.0, 41), wave), kLayered, w);
  REQUIRE_FALSE(r.x.empty());
  for (double x : r.x) CHECK(x > 1.02);
  CHECK(r.max_abs < 1e-4);
}

TEST_CASE("residual of noise is of order one") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const FieldGrid g =
      synthetic_grid(linspace(1.1, 2.0, 30), linspace(0.0, 1.0, 30), [&](double, double) { return u(rng); });
  const ResidualField r = wave_equation_residual(g, kLayered, 1.0);
  CHECK(r.max_abs > 0.5);
}

TEST_CASE("residual rejects unusable grids") {
  auto zero = [](double, double) { return 0.0; };
  CHECK_THROWS_AS(wave_equation_residual(synthetic_grid(linspace(1.1, 2.0, 4), linspace(0.0, 1.0, 9), zero),
                                         kLayered, 1.0),
                  InvalidArgument);
  CHECK_THROWS_AS(wave_equation_residual(synthetic_grid({1.1, 1.2, 1.3, 1.5, 1.6}, linspace(0.0, 1.0, 9), zero),
                                         kLayered, 1.0),
                  InvalidArgument);
  const ResidualField coarse = wave_equation_residual(
      synthetic_grid(linspace(1.1, 2.0, 9), linspace(0.0, 1.0, 9), zero), kLayered, 10.0);
  CHECK(coarse.too_coarse);
}

TEST_CASE("computed field satisfies the wave equation in the outer layer") {
  const double h = 1.0 / (16.0 * kPi);
  const std::size_t nx = 26;
  const std::size_t nt = 101;
  auto req = packet_request(1.0, linspace(1.0, 1.0 + h * (nx - 1), nx),
                         linspace(10.0, 10.0 + h * (nt - 1), nt));
  const FieldGrid g = evaluate_field_grid(req);
  CHECK_FALSE(g.shortfall);
  const ResidualField r = wave_equation_residual(g, kLayered, kPi);
  CHECK_FALSE(r.too_coarse);
  REQUIRE_FALSE(r.values.empty());
  CHECK(r.max_abs < 1e-2);
}

TEST_CASE("grid samples match point evaluation") {
  auto req = packet_request(0.2, linspace(-1.0, 2.0, 7), linspace(5.0, 20.0, 16));
  const FieldGrid g = evaluate_field_grid(req);
  for (std::size_t ix = 0; ix < g.x_axis.size(); ++ix) {
    for (std::size_t it = 0; it < g.t_axis.size(); it += 3) {
      const FieldSample p = packet_field_normal(g.x_axis[ix], g.t_axis[it], req.medium, req.packet);
      CHECK(g.at(ix, it).x == g.x_axis[ix]);
      CHECK(g.at(ix, it).t == g.t_axis[it]);
      CHECK(std::abs(g.at(ix, it).f - p.f) <= 1e-11);
    }
  }
}

TEST_CASE("grid is bit-identical for any thread count") {
  auto req = packet_request(0.2, linspace(1.0, 2.0, 12), linspace(5.0, 20.0, 40));
  const FieldGrid one = evaluate_field_grid(req);
  for (unsigned threads : {2u, 3u, 5u}) {
    req.threads = threads;
    const FieldGrid many = evaluate_field_grid(req);
    REQUIRE(many.samples.size() == one.samples.size());
    bool same = true;
    for (std::size_t i = 0; i < one.samples.size(); ++i) {
      same = same && many.samples[i].f_plus == one.samples[i].f_plus &&
             many.samples[i].f_minus == one.samples[i].f_minus &&
             many.samples[i].error == one.samples[i].error;
    }
    CHECK(same);
    CHECK(many.max_error == one.max_error);
  }
}

TEST_CASE("oblique grids use the fixed-k_par path") {
  FieldGridRequest req{kLayered, IncidentPacket::from_carrier(kLayered, 2.0 * kPi, -3.0, 0.5, 2.0),
                       linspace(-1.0, 1.5, 3), linspace(4.0, 8.0, 3)};
  req.rho_dot_kpar = 0.25;
  const FieldGrid g = evaluate_field_grid(req);
  for (std::size_t ix = 0; ix < 3; ++ix) {
    for (std::size_t it = 0; it < 3; ++it) {
      const FieldSample p =
          packet_field_oblique(g.x_axis[ix], 0.25, g.t_axis[it], req.medium, req.packet);
      CHECK(g.at(ix, it).f == p.f);
    }
  }
}
