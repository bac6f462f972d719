// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "trilayer/cli/commands.hpp"
#include "trilayer/cli/verify.hpp"
#include "trilayer/field_grid.hpp"
#include "trilayer/packet.hpp"
#include "trilayer/step_scattering.hpp"
#include "trilayer/trilayer_green.hpp"

using namespace trilayer;

namespace {

constexpr double kPi = std::numbers::pi;
const TrilayerMedium kLayered(0.5, 1.0, 0.5, 1.0);

struct Outcome {
  bool pass = false;
  std::string detail;
};

unsigned worker_threads() { return std::max(2u, std::thread::hardware_concurrency()); }

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

TrilayerMedium random_medium(std::mt19937_64& rng) {
  return TrilayerMedium(uniform(rng, 0.2, 5.0), uniform(rng, 0.2, 5.0), uniform(rng, 0.2, 5.0),
                        uniform(rng, 0.1, 5.0));
}

// Real k_perp in all three layers: k_par below omega / max(v).
SpectralPoint random_propagating(std::mt19937_64& rng, const TrilayerMedium& m) {
  const double omega = uniform(rng, 0.05, 20.0);
  const double vmax = std::max({m.v1(), m.v2(), m.v3()});
  return SpectralPoint::at(m, omega, uniform(rng, 0.0, 0.999) * omega / vmax);
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

Outcome unitarity() {
  std::mt19937_64 rng(1001);
  double worst = 0.0;
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < 10000; ++i) {
    const TrilayerMedium m = random_medium(rng);
    const SpectralPoint p = random_propagating(rng, m);
    const Probabilities pr = probabilities(m, p);
    const AmplitudeSet a = amplitude_set(m, p);
    worst = std::max({worst, std::abs(pr.transmission + pr.reflection - 1.0),
                      std::abs(std::norm(a.t) + std::norm(a.r) - 1.0)});
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst <= 1e-12 && secs < 1.0, fmt("max | |t|^2+|r|^2-1 | = %.2e, %.3f s", worst, secs)};
}

Outcome resonance() {
  double sym = 0.0;
  for (double v13 : {0.5, 0.8, 2.0}) {
    const TrilayerMedium m(v13, 1.0, v13, 1.0);
    for (int n = 1; n <= 4; ++n) {
      const Probabilities pr = probabilities(m, SpectralPoint::at(m, n * kPi));
      sym = std::max(sym, std::abs(pr.transmission - 1.0));
    }
  }
  // k1 = 1, k3 = 2, k2 d = pi at omega = 1.
  const TrilayerMedium asym(1.0, 1.0 / kPi, 0.5, 1.0);
  const double t2 = probabilities(asym, SpectralPoint::at(asym, 1.0)).transmission;
  const double dev = std::abs(t2 - 8.0 / 9.0);
  return {sym <= 1e-10 && dev <= 1e-12,
          fmt("symmetric max |1-|t|^2| = %.2e; asymmetric | |t|^2-8/9 | = %.2e", sym, dev)};
}

Outcome dual_path() {
  cli::VerifySettings s;
  s.points = 1000;
  const auto start = std::chrono::steady_clock::now();
  const cli::SuiteResult r = cli::verify_dual_path(s);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {r.passed && r.checked == 1000 && secs < 5.0,
          fmt("worst relative deviation %.2e over 1000 points, %.3f s", r.worst, secs)};
}

Outcome tmatrix_series() {
  std::mt19937_64 rng(1004);
  constexpr Channel channels[] = {Channel::reflect_gt, Channel::reflect_lt, Channel::cross};
  int checked = 0;
  int bad = 0;
  double worst_final = 0.0;
  while (checked < 100) {
    const TrilayerMedium m = random_medium(rng);
    const SpectralPoint p = random_propagating(rng, m);
    const StepContext ctx =
        interface_context(m, p, checked % 2 == 0 ? Interface::at_zero : Interface::at_d);
    const Channel ch = channels[checked % 3];
    const double q = std::abs(born_ratio(ctx, ch));
    if (q >= 0.9) continue;
    const cplx closed = t_matrix_closed(ctx, ch);
    const double scale = std::abs(closed);
    // Partial sums of a geometric series: |S_n - T| = |T| |q|^n.
    for (int n = 1; n <= 30; ++n) {
      const double err = std::abs(t_matrix_series(ctx, ch, n) - closed);
      if (err > scale * (std::pow(q, n) * (1.0 + 1e-9) + 1e-13)) ++bad;
      if (n == 30) worst_final = std::max(worst_final, err / (scale * std::max(std::pow(q, 30), 1e-13)));
    }
    ++checked;
  }
  return {bad == 0, fmt("%.0f partial sums off the geometric bound; worst err/(|T| q^30) = %.3f",
                        static_cast<double>(bad), worst_final)};
}

Outcome free_propagator() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  double odd = 0.0;
  const std::pair<double, double> pairs[] = {{2.0, -1.0}, {0.5, -1.0}, {-0.3, -2.0}, {-1.0, 2.0}};
  for (double v : {1.0, 2.0}) {
    const TrilayerMedium m(v, v, v, 1.0);
    for (const auto& [x, xp] : pairs) {
      std::vector<double> taus;
      for (double tau = 0.05; tau <= 8.0; tau += 0.25) {
        taus.push_back(tau);
        taus.push_back(-tau);
      }
      const std::vector<PropagatorSample> g = propagator_samples(x, xp, taus, m);
      for (std::size_t i = 0; i < taus.size(); i += 2) {
        const double tau = taus[i];
        odd = std::max(odd, std::abs(g[i].value + g[i + 1].value));
        if (std::abs(v * tau - std::abs(x - xp)) < 0.1) continue;
        worst = std::max(worst, std::abs(g[i].value - free_propagator_closed(x, xp, tau, v)));
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst <= 1e-3 && odd <= 1e-13 && secs < 10.0,
          fmt("max deviation %.2e, max |g(t)+g(-t)| = %.2e", worst, odd) +
              fmt(", %.2f s", secs)};
}

Outcome homogeneous_packet() {
  const TrilayerMedium flat(1.0, 1.0, 1.0, 1.0);
  const double omega0 = kPi;
  const IncidentPacket p = IncidentPacket::from_carrier(flat, omega0, -5.0, 20.0);
  FieldOptions weighted;
  weighted.weight = SpectralWeight::omega;
  double plain = 0.0;
  double omega = 0.0;
  const double period = 2.0 * kPi / omega0;
  for (double x : {-6.0, -5.0, -4.5}) {
    for (int i = 0; i <= 40; ++i) {
      const double t = period * i / 40.0;
      const double ep = 0.5 * std::cos(omega0 * x - omega0 * t);
      const double em = 0.5 * std::cos(omega0 * x + omega0 * t);
      const FieldSample a = packet_field_normal(x, t, flat, p);
      const FieldSample b = packet_field_normal(x, t, flat, p, weighted);
      plain = std::max({plain, std::abs(a.f_plus - ep), std::abs(a.f_minus - em)});
      omega = std::max({omega, std::abs(b.f_plus - ep), std::abs(b.f_minus - em)});
    }
  }
  return {plain <= 1e-2 && omega > 1e-2,
          fmt("plain weight sup error %.2e; omega weight sup error %.2e (rejected)", plain, omega)};
}

double reflected_fraction(double sigma) {
  FieldGridRequest req{kLayered, IncidentPacket::from_carrier(kLayered, kPi, -5.0, sigma),
                       linspace(-5.0, -0.05, 100), linspace(0.0, 30.0, 150)};
  req.threads = worker_threads();
  req.options.part = Layer1Part::reflected;
  const FieldGrid refl = evaluate_field_grid(req);
  req.options.part = Layer1Part::incident;
  const FieldGrid inc = evaluate_field_grid(req);
  double er = 0.0;
  double ei = 0.0;
  for (std::size_t i = 0; i < refl.samples.size(); ++i) {
    er += refl.samples[i].f * refl.samples[i].f;
    ei += inc.samples[i].f * inc.samples[i].f;
  }
  return er / ei;
}

Outcome figures() {
  const auto start = std::chrono::steady_clock::now();
  FieldGridRequest req{kLayered, IncidentPacket::from_carrier(kLayered, kPi, -5.0, 0.2),
                       linspace(1.0, 2.0, 100), linspace(5.0, 20.0, 150)};
  req.threads = worker_threads();
  const FieldGrid g = evaluate_field_grid(req);
  double peak = 0.0;
  double t_peak = 0.0;
  for (std::size_t it = 0; it < g.t_axis.size(); ++it) {
    const double a = std::abs(g.at(0, it).f);
    if (a > peak) {
      peak = a;
      t_peak = g.t_axis[it];
    }
  }
  const double narrow = reflected_fraction(0.2);
  const double wide = reflected_fraction(2.0);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = t_peak >= 9.0 && t_peak <= 14.0 && wide < 0.1 * narrow && secs < 120.0;
  return {ok, fmt("peak at x=1 at t=%.3f; ", t_peak) +
                  fmt("reflected energy fraction %.3e (sigma 2) vs %.3e (sigma 0.2)", wide, narrow) +
                  fmt(", %.1f s", secs)};
}

Outcome residual() {
  const double omega0 = kPi;
  const double h = 1.0 / (16.0 * omega0);
  const std::size_t nx = static_cast<std::size_t>(1.0 / h) + 1;
  const std::size_t nt = static_cast<std::size_t>(12.0 / h) + 1;
  FieldGridRequest req{kLayered, IncidentPacket::from_carrier(kLayered, omega0, -5.0, 1.0),
                       linspace(1.0, 1.0 + h * (nx - 1), nx),
                       linspace(6.0, 6.0 + h * (nt - 1), nt)};
  req.threads = worker_threads();
  const FieldGrid g = evaluate_field_grid(req);
  const ResidualField r = wave_equation_residual(g, kLayered, omega0);
  const bool ok = !r.values.empty() && !r.too_coarse && !g.shortfall && r.max_abs < 1e-2;
  return {ok, fmt("max normalized residual %.2e on %.0f points", r.max_abs,
                  static_cast<double>(r.values.size()))};
}

std::string read_all(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "trilayer_acceptance";
  fs::remove_all(root);
  std::ostringstream log;
  std::vector<std::string> outputs;
  const unsigned n = worker_threads();
  for (unsigned threads : {1u, 1u, n, n}) {
    cli::CommandOptions o;
    o.out_dir = (root / std::to_string(outputs.size())).string();
    o.threads = threads;
    if (cli::run_command("field", o, log) != cli::kExitOk) return {false, "field run failed: " + log.str()};
    outputs.push_back(read_all(fs::path(o.out_dir) / "field.csv"));
  }
  const bool same = !outputs[0].empty() &&
                    std::all_of(outputs.begin(), outputs.end(),
                                [&](const std::string& s) { return s == outputs[0]; });
  fs::remove_all(root);
  return {same, fmt("4 runs at 1 and %.0f threads, %.0f bytes each", n,
                    static_cast<double>(outputs[0].size()))};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"unitarity sweep", unitarity},
      {"resonance", resonance},
      {"dual-path Green function", dual_path},
      {"T-matrix series", tmatrix_series},
      {"free propagator", free_propagator},
      {"homogeneous packet", homogeneous_packet},
      {"figure-level reproduction", figures},
      {"wave-equation residual", residual},
      {"determinism", determinism},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
