#include "trilayer/cli/verify.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "trilayer/errors.hpp"
#include "trilayer/mst_assembly.hpp"

namespace trilayer::cli {

namespace {

class Sampler {
 public:
  Sampler(std::uint64_t seed, std::uint64_t stream) : rng_(seed ^ (stream * 0x9E3779B97F4A7C15ull)) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }

  TrilayerMedium medium() {
    const double lo = std::log(0.25);
    const double hi = std::log(4.0);
    const double v1 = std::exp(uniform(lo, hi));
    const double v2 = std::exp(uniform(lo, hi));
    const double v3 = std::exp(uniform(lo, hi));
    return TrilayerMedium(v1, v2, v3, uniform(0.5, 2.0));
  }

  /// All three k_perp real.
  SpectralPoint propagating(const TrilayerMedium& m) {
    const double omega = uniform(0.1, 20.0);
    const double vmax = std::max({m.v1(), m.v2(), m.v3()});
    return SpectralPoint::at(m, omega, uniform(0.0, 0.99) * omega / vmax);
  }

  /// k1, k3 real; k2 may be evanescent.
  SpectralPoint outer_propagating(const TrilayerMedium& m) {
    const double omega = uniform(0.1, 20.0);
    const double vmax = std::max(m.v1(), m.v3());
    return SpectralPoint::at(m, omega, uniform(0.0, 0.99) * omega / vmax);
  }

 private:
  std::mt19937_64 rng_;
};

std::string describe(const TrilayerMedium& m, const SpectralPoint& p) {
  std::ostringstream os;
  os.precision(17);
  os << "v=(" << m.v1() << "," << m.v2() << "," << m.v3() << ") d=" << m.width()
     << " omega=" << p.omega << " k_par=" << p.k_par;
  return os.str();
}

void record(SuiteResult& r, double deviation, const std::string& input) {
  ++r.checked;
  if (!(deviation <= r.worst)) {
    r.worst = deviation;
    r.worst_input = input;
  }
  if (!(deviation <= r.tolerance)) r.passed = false;
}

void record_failure(SuiteResult& r, const std::string& input, const std::string& what) {
  ++r.checked;
  r.passed = false;
  r.worst = std::numeric_limits<double>::infinity();
  r.worst_input = input + " threw: " + what;
}

double rel(const cplx& a, const cplx& b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

struct PairSample {
  double x;
  double x_prime;
};

PairSample sample_pair(Sampler& s, RegionPair pair, double d) {
  const double tiny = 1e-3 * d;
  switch (pair) {
    case RegionPair::left_to_right: return {s.uniform(d + tiny, 4.0 * d), s.uniform(-3.0 * d, -tiny)};
    case RegionPair::right_to_left: return {s.uniform(-3.0 * d, -tiny), s.uniform(d + tiny, 4.0 * d)};
    case RegionPair::left_to_spacer: return {s.uniform(0.0, d), s.uniform(-3.0 * d, -tiny)};
    case RegionPair::spacer_to_left: return {s.uniform(-3.0 * d, -tiny), s.uniform(0.0, d)};
    case RegionPair::left_to_left: return {s.uniform(-3.0 * d, -tiny), s.uniform(-3.0 * d, -tiny)};
  }
  return {};
}

constexpr RegionPair kPairs[] = {RegionPair::left_to_right, RegionPair::right_to_left,
                                 RegionPair::left_to_spacer, RegionPair::spacer_to_left,
                                 RegionPair::left_to_left};

}  // namespace

SuiteResult verify_unitarity(const VerifySettings& s, const VerifyHooks& h) {
  SuiteResult r{"unitarity", true, 0, 1e-12, 0.0, {}};
  Sampler rng(s.seed, 1);
  for (std::size_t i = 0; i < s.points; ++i) {
    const TrilayerMedium m = rng.medium();
    const SpectralPoint p = rng.propagating(m);
    try {
      const AmplitudeSet a = h.amplitudes(m, p);
      const Probabilities pr = probabilities(m, p);
      const double dev = std::max(std::abs(std::norm(a.t) + std::norm(a.r) - 1.0),
                                  std::abs(pr.transmission + pr.reflection - 1.0));
      record(r, dev, describe(m, p));
    } catch (const Error& e) {
      record_failure(r, describe(m, p), e.what());
    }
  }
  return r;
}

SuiteResult verify_reciprocity(const VerifySettings& s, const VerifyHooks& h) {
  SuiteResult r{"reciprocity", true, 0, 1e-12, 0.0, {}};
  Sampler rng(s.seed, 2);
  constexpr RegionPair forward[] = {RegionPair::left_to_right, RegionPair::left_to_spacer,
                                    RegionPair::left_to_left};
  for (std::size_t i = 0; i < s.points; ++i) {
    const TrilayerMedium m = rng.medium();
    const SpectralPoint p = rng.outer_propagating(m);
    const PairSample xy = sample_pair(rng, forward[i % 3], m.width());
    const std::string input = describe(m, p) + " x=" + std::to_string(xy.x) +
                              " x'=" + std::to_string(xy.x_prime);
    try {
      record(r, rel(h.green(xy.x, xy.x_prime, m, p), h.green(xy.x_prime, xy.x, m, p)), input);
    } catch (const Error& e) {
      record_failure(r, input, e.what());
    }
  }
  return r;
}

SuiteResult verify_dual_path(const VerifySettings& s, const VerifyHooks& h) {
  SuiteResult r{"dual_path", true, 0, 1e-12, 0.0, {}};
  Sampler rng(s.seed, 3);
  for (std::size_t i = 0; i < s.points; ++i) {
    const TrilayerMedium m = rng.medium();
    const SpectralPoint p = rng.outer_propagating(m);
    const PairSample xy = sample_pair(rng, kPairs[i % 5], m.width());
    std::ostringstream in;
    in.precision(17);
    in << describe(m, p) << " x=" << xy.x << " x'=" << xy.x_prime;
    try {
      record(r, rel(assembled_green(xy.x, xy.x_prime, m, p), h.green(xy.x, xy.x_prime, m, p)),
             in.str());
    } catch (const Error& e) {
      record_failure(r, in.str(), e.what());
    }
  }
  return r;
}

SuiteResult verify_tmatrix_series(const VerifySettings& s, const VerifyHooks& h) {
  SuiteResult r{"tmatrix_series", true, 0, 1e-12, 0.0, {}};
  Sampler rng(s.seed, 4);
  constexpr int kTerms = 30;
  constexpr Channel channels[] = {Channel::reflect_gt, Channel::reflect_lt, Channel::cross};
  const std::size_t n = std::min<std::size_t>(s.points, 100);
  for (std::size_t i = 0; i < n; ++i) {
    TrilayerMedium m = rng.medium();
    SpectralPoint p = rng.propagating(m);
    const Channel ch = channels[i % 3];
    const Interface where = i % 2 == 0 ? Interface::at_zero : Interface::at_d;
    StepContext ctx = interface_context(m, p, where);
    // The Born series converges only for |G0 H1| < 1; draw until it does.
    for (int tries = 0; tries < 1000 && std::abs(born_ratio(ctx, ch)) >= 0.9; ++tries) {
      m = rng.medium();
      p = rng.propagating(m);
      ctx = interface_context(m, p, where);
    }
    const std::string input = describe(m, p) + " channel=" + std::to_string(static_cast<int>(ch));
    try {
      const cplx q = born_ratio(ctx, ch);
      const cplx closed = t_matrix_closed(ctx, ch);
      const cplx partial = h.series(ctx, ch, kTerms);
      // T - S_n = T q^n exactly for a geometric series.
      const cplx expected = closed * (1.0 - std::pow(q, kTerms));
      const double scale = std::abs(closed) / (1.0 - std::abs(q));
      const double dev = scale == 0.0 ? std::abs(partial) : std::abs(partial - expected) / scale;
      record(r, std::abs(q) < 1.0 ? dev : std::numeric_limits<double>::infinity(), input);
    } catch (const Error& e) {
      record_failure(r, input, e.what());
    }
  }
  return r;
}

SuiteResult verify_homogeneous_packet(const VerifySettings& s, const VerifyHooks& h) {
  SuiteResult r{"homogeneous_packet", true, 0, 1e-2, 0.0, {}};
  const TrilayerMedium m(1.0, 1.0, 1.0, 1.0);
  const double omega0 = std::numbers::pi;
  const IncidentPacket packet = IncidentPacket::from_carrier(m, omega0, -5.0, 20.0);
  for (double x : {-6.0, -5.0, -4.0}) {
    for (int k = 0; k <= 40; ++k) {
      const double t = 2.0 * k / 40.0;
      const std::string input = "x=" + std::to_string(x) + " t=" + std::to_string(t);
      try {
        const FieldSample f = h.packet_field(x, t, m, packet, s.field);
        const double dp = std::abs(f.f_plus - 0.5 * std::cos(omega0 * x - omega0 * t));
        const double dm = std::abs(f.f_minus - 0.5 * std::cos(omega0 * x + omega0 * t));
        record(r, std::max(dp, dm), input);
      } catch (const Error& e) {
        record_failure(r, input, e.what());
      }
    }
  }
  return r;
}

SuiteResult verify_plane_wave(const VerifySettings& s, const VerifyHooks& h) {
  SuiteResult r{"plane_wave", true, 0, 1e-10, 0.0, {}};
  Sampler rng(s.seed, 7);
  const TrilayerMedium flat(1.0, 1.0, 1.0, 1.0);
  for (std::size_t i = 0; i < s.points; ++i) {
    const double x = rng.uniform(-5.0, 5.0);
    const double t = rng.uniform(0.0, 10.0);
    const double w = rng.uniform(0.5, 10.0);
    const auto [fp, fm] = h.plane_wave(x, t, flat, w, 1.0);
    const double dev = std::max(std::abs(fp - 0.5 * std::cos(w * x - w * t)),
                                std::abs(fm - 0.5 * std::cos(w * x + w * t)));
    record(r, dev, "x=" + std::to_string(x) + " t=" + std::to_string(t) +
                       " omega0=" + std::to_string(w));
  }
  return r;
}

SuiteResult verify_packet_plane_wave(const VerifySettings& s, const VerifyHooks& h) {
  SuiteResult r{"packet_plane_wave", true, 0, 1e-2, 0.0, {}};
  // A wide packet in a layered medium matches the plane wave at the center
  // of its transmitted envelope.
  const TrilayerMedium layered(0.5, 1.0, 0.5, 1.0);
  const double omega0 = std::numbers::pi;
  const double sigma = 20.0;
  const double x_i = -10.0 * sigma;
  const IncidentPacket packet = IncidentPacket::from_carrier(layered, omega0, x_i, sigma);
  const double r1 = layered.v2() / layered.v1();
  const double r3 = layered.v2() / layered.v3();
  const cplx e2 = std::exp(cplx{0.0, 2.0 * omega0});
  const cplx dt = (r1 + 1.0) * (r3 + 1.0) - (r1 - 1.0) * (r3 - 1.0) * e2;
  const cplx ddt = -(r1 - 1.0) * (r3 - 1.0) * cplx{0.0, 2.0} * e2;
  const double x = 1.5;
  // Group delay of the transmitted term at the carrier.
  const double t_center = 1.0 + r3 * (x - 1.0) - r1 * x_i - (ddt / dt).imag();
  // f+ is centered at +t_center; f- is its mirror, centered at -t_center.
  for (int k = 0; k <= 40; ++k) {
    const double t = t_center - 1.0 + 2.0 * k / 40.0;
    const std::string input = "x=" + std::to_string(x) + " t=+-" + std::to_string(t);
    try {
      const double fp = h.packet_field(x, t, layered, packet, s.field).f_plus;
      const double fm = h.packet_field(x, -t, layered, packet, s.field).f_minus;
      const double pp = h.plane_wave(x, t, layered, omega0, 1.0).first;
      const double pm = h.plane_wave(x, -t, layered, omega0, 1.0).second;
      record(r, std::max(std::abs(fp - pp), std::abs(fm - pm)), input);
    } catch (const Error& e) {
      record_failure(r, input, e.what());
    }
  }
  return r;
}

namespace {

struct PropagatorCheck {
  double tau;
  double plus;
  double minus;
  double closed_plus;
  double closed_minus;
  std::string input;
};

std::vector<PropagatorCheck> homogeneous_propagator_checks(const VerifySettings& s,
                                                           const VerifyHooks& h) {
  const TrilayerMedium m(1.0, 1.0, 1.0, 1.0);
  const double v = 1.0;
  const PairSample pairs[] = {{2.0, -1.0}, {-0.5, -2.0}, {0.5, -1.0}};
  std::vector<PropagatorCheck> out;
  for (const PairSample& xy : pairs) {
    const double dist = std::abs(xy.x - xy.x_prime);
    for (double tau : {0.5, 1.0, 1.3, 2.0, 2.7, 3.5, 5.0}) {
      // Keep 0.1 light-cone units away from the step.
      if (std::abs(v * tau - dist) < 0.1 * dist / v) continue;
      PropagatorCheck c;
      c.tau = tau;
      c.input = "x=" + std::to_string(xy.x) + " x'=" + std::to_string(xy.x_prime) +
                " tau=" + std::to_string(tau);
      c.plus = h.propagator(xy.x, xy.x_prime, tau, m, 0.0, s.propagator);
      c.minus = h.propagator(xy.x, xy.x_prime, -tau, m, 0.0, s.propagator);
      c.closed_plus = free_propagator_closed(xy.x, xy.x_prime, tau, v);
      c.closed_minus = free_propagator_closed(xy.x, xy.x_prime, -tau, v);
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::vector<SuiteResult> verify_free_propagator(const VerifySettings& s, const VerifyHooks& h) {
  SuiteResult values{"free_propagator", true, 0, 1e-3, 0.0, {}};
  SuiteResult odd{"propagator_antisymmetry", true, 0, 1e-13, 0.0, {}};
  try {
    for (const PropagatorCheck& c : homogeneous_propagator_checks(s, h)) {
      record(values, std::max(std::abs(c.plus - c.closed_plus), std::abs(c.minus - c.closed_minus)),
             c.input);
      record(odd, std::abs(c.plus + c.minus), c.input);
    }
  } catch (const Error& e) {
    record_failure(values, "homogeneous propagator", e.what());
    record_failure(odd, "homogeneous propagator", e.what());
  }
  return {values, odd};
}

bool VerifyReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

std::string VerifyReport::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["points"] = points;
  j["passed"] = passed();
  j["suites"] = nlohmann::ordered_json::array();
  for (const SuiteResult& s : suites) {
    nlohmann::ordered_json e;
    e["name"] = s.name;
    e["passed"] = s.passed;
    e["checked"] = s.checked;
    e["tolerance"] = s.tolerance;
    if (std::isfinite(s.worst)) {
      e["worst"] = s.worst;
    } else {
      e["worst"] = nullptr;
    }
    e["worst_input"] = s.worst_input;
    j["suites"].push_back(e);
  }
  return j.dump(2) + "\n";
}

VerifyReport run_verification(const VerifySettings& s, const VerifyHooks& h) {
  VerifyReport report;
  report.seed = s.seed;
  report.points = s.points;
  report.suites.push_back(verify_unitarity(s, h));
  report.suites.push_back(verify_reciprocity(s, h));
  report.suites.push_back(verify_dual_path(s, h));
  report.suites.push_back(verify_tmatrix_series(s, h));
  report.suites.push_back(verify_homogeneous_packet(s, h));
  report.suites.push_back(verify_plane_wave(s, h));
  report.suites.push_back(verify_packet_plane_wave(s, h));
  for (SuiteResult& r : verify_free_propagator(s, h)) report.suites.push_back(std::move(r));
  return report;
}

}  // namespace trilayer::cli
