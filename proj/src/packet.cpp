#include "trilayer/packet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>
#include <exception>

#include "trilayer/errors.hpp"
#include "trilayer/trilayer_green.hpp"

namespace trilayer {

namespace {

constexpr cplx kI{0.0, 1.0};

double field_scale(double amplitude) {
  return -amplitude / std::sqrt(2.0 * std::numbers::pi);
}

void require_finite(const cplx& z, double omega) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw NonFiniteIntegrand(omega);
}

// Green function for a source in layer 1 written in its incident-from-left
// form in layer 1 as well, so that the packet integral stays a plane-wave
// decomposition on both sides of the source.
cplx green_from_left(double x, double x_src, const TrilayerMedium& medium,
                     const SpectralPoint& p, Layer1Part part) {
  if (x < 0.0) {
    const cplx k1 = p.k(Layer::left);
    if (k1 == cplx{}) throw ChannelCutoff("Green function diverges: k1_perp = 0");
    const cplx pre = 1.0 / (2.0 * kI * medium.v1() * medium.v1() * k1);
    cplx out{};
    if (part != Layer1Part::reflected) out += std::exp(kI * k1 * (x - x_src));
    if (part != Layer1Part::incident) {
      out += amplitude_set(medium, p).r * std::exp(-kI * k1 * (x + x_src));
    }
    return pre * out;
  }
  if (part != Layer1Part::full) {
    throw UnsupportedRegion("incident/reflected split needs a receiver in layer 1");
  }
  return green_retarded(x, x_src, medium, p);
}

}  // namespace

IncidentPacket IncidentPacket::from_carrier(const TrilayerMedium& medium, double omega0,
                                            double x_i, double sigma_x, double k0_par,
                                            double amplitude) {
  IncidentPacket p;
  p.amplitude = amplitude;
  p.x_i = x_i;
  p.sigma_x = sigma_x;
  p.k0_par = k0_par;
  p.omega0 = omega0;
  const double k0 = omega0 / medium.v1();
  if (!(k0 > k0_par)) throw InvalidArgument("carrier must satisfy omega0 > v1 * k0_par");
  p.k0_x = std::sqrt((k0 - k0_par) * (k0 + k0_par));
  p.validate(medium);
  return p;
}

void IncidentPacket::validate(const TrilayerMedium& medium) const {
  if (!std::isfinite(amplitude)) throw InvalidArgument("packet amplitude must be finite");
  if (!(std::isfinite(x_i) && x_i < 0.0)) throw InvalidArgument("packet x_i must be < 0");
  if (!(std::isfinite(sigma_x) && sigma_x > 0.0)) {
    throw InvalidArgument("packet sigma_x must be > 0");
  }
  if (!(std::isfinite(k0_x) && k0_x > 0.0)) throw InvalidArgument("packet k0_x must be > 0");
  if (!(std::isfinite(k0_par) && k0_par >= 0.0)) {
    throw InvalidArgument("packet k0_par must be >= 0");
  }
  const double expected = medium.v1() * std::hypot(k0_x, k0_par);
  if (!(std::abs(omega0 - expected) <= 1e-12 * expected)) {
    throw InvalidArgument("packet omega0 must equal v1 |k0|");
  }
}

NormalProblem NormalProblem::from(const TrilayerMedium& medium, const IncidentPacket& packet) {
  packet.validate(medium);
  const ScaleSystem scale(medium);
  NormalProblem p;
  p.r1 = medium.v2() / medium.v1();
  p.r3 = medium.v2() / medium.v3();
  p.x_i = packet.x_i / scale.length_unit();
  p.sigma = packet.sigma_x / scale.length_unit();
  p.omega0 = packet.omega0 / scale.omega_d();
  p.amplitude = packet.amplitude;
  return p;
}

double NormalProblem::max_slowness() const noexcept {
  return std::max({r1, 1.0, r3});
}

cplx packet_profile(const NormalProblem& pr, double x, double omega, double carrier,
                    Layer1Part part) {
  const double dw = carrier - omega;
  const double env = std::exp(-pr.r1 * pr.r1 * dw * dw * pr.sigma * pr.sigma / 2.0);
  const cplx source = std::exp(kI * (pr.r1 * dw * pr.x_i));
  const cplx e2 = std::exp(kI * (2.0 * omega));
  const cplx dt = (pr.r1 + 1.0) * (pr.r3 + 1.0) - (pr.r1 - 1.0) * (pr.r3 - 1.0) * e2;

  if (x < 0.0) {
    cplx wave{};
    if (part != Layer1Part::reflected) wave += std::exp(kI * (pr.r1 * omega * x));
    if (part != Layer1Part::incident) {
      const cplx r = ((pr.r1 - 1.0) * (pr.r3 + 1.0) - (pr.r1 + 1.0) * (pr.r3 - 1.0) * e2) / dt;
      wave += r * std::exp(-kI * (pr.r1 * omega * x));
    }
    return -0.5 * kI * pr.r1 * pr.sigma * env * wave * source;
  }
  if (part != Layer1Part::full) {
    throw UnsupportedRegion("incident/reflected split needs a receiver in layer 1");
  }
  if (x <= 1.0) {
    const cplx wave = std::exp(kI * (omega * x)) * (pr.r3 + 1.0) +
                      std::exp(-kI * (omega * x)) * (1.0 - pr.r3) * e2;
    return -kI * pr.r1 * pr.sigma * env * wave * source / dt;
  }
  return -2.0 * kI * pr.r1 * pr.r3 * pr.sigma * env * std::exp(kI * omega) *
         std::exp(kI * (pr.r3 * omega * (x - 1.0))) * source / dt;
}

OscillatorySpec normal_spectrum_spec(const NormalProblem& pr, double x, double t_max,
                                     double truncation_widths) {
  OscillatorySpec spec;
  spec.omega_min = 0.0;
  spec.center = pr.omega0;
  spec.width = pr.envelope_width();
  spec.max_phase_rate = std::abs(t_max) + (std::abs(x) + std::abs(pr.x_i)) * pr.max_slowness() + 2.0;
  spec.truncation_widths = truncation_widths;
  return spec;
}

PacketSpectrum::PacketSpectrum(const NormalProblem& problem, double x, double t_max,
                               const FieldOptions& options, int refinement)
    : x_(x), t_max_(std::abs(t_max)), refinement_(refinement),
      scale_(field_scale(problem.amplitude)) {
  const OscillatorySpec spec =
      normal_spectrum_spec(problem, x, t_max_, options.quad.truncation_widths);
  const PanelLayout layout = panel_layout(spec, refinement);
  const std::size_t n = layout.nodes.size();
  omega_ = layout.nodes;
  a_.resize(n);
  b_.resize(n);
  ea_.resize(n);
  eb_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double w = omega_[j];
    cplx p = packet_profile(problem, x, w, problem.omega0, options.part);
    cplx m = packet_profile(problem, x, w, -problem.omega0, options.part);
    if (options.weight == SpectralWeight::omega) {
      p *= w;
      m *= w;
    }
    require_finite(p, w);
    require_finite(m, w);
    const double ca = p.imag() + m.imag();
    const double cb = p.real() - m.real();
    const double wk = layout.kronrod[j];
    const double we = wk - layout.gauss[j];
    a_[j] = wk * ca;
    b_[j] = wk * cb;
    ea_[j] = we * ca;
    eb_[j] = we * cb;
  }
}

FieldSample PacketSpectrum::evaluate(double t, simd::Kernel kernel) const {
  if (std::abs(t) > t_max_) {
    throw InvalidArgument("spectral table built for |t| <= " + std::to_string(t_max_));
  }
  simd::SpectralColumns cols{omega_, a_, b_, ea_, eb_, kNodesPerPanel,
                             omega_.empty() ? 0.0 : std::max(std::abs(omega_.front()),
                                                             std::abs(omega_.back()))};
  const simd::OscillatorySums s = simd::oscillatory_sums(kernel, cols, t);
  FieldSample out;
  out.x = x_;
  out.t = t;
  out.f_plus = scale_ * (s.cos_sum - s.sin_sum);
  out.f_minus = scale_ * (s.cos_sum + s.sin_sum);
  out.f = out.f_plus + out.f_minus;
  out.error = std::abs(scale_) * s.error;
  return out;
}

namespace {

void require_normal(const IncidentPacket& packet) {
  if (packet.k0_par != 0.0) {
    throw InvalidArgument("normal-incidence field needs k0_par = 0");
  }
}

}  // namespace

FieldSample packet_field_normal(double x, double t, const TrilayerMedium& medium,
                                const IncidentPacket& packet, const FieldOptions& options) {
  require_normal(packet);
  const NormalProblem problem = NormalProblem::from(medium, packet);
  const simd::Kernel kernel = simd::resolve_kernel(options.quad.kernel);
  FieldSample out;
  const int max_ref = std::max(0, options.quad.max_refinements);
  for (int ref = 0; ref <= max_ref; ++ref) {
    out = PacketSpectrum(problem, x, t, options, ref).evaluate(t, kernel);
    out.shortfall = out.error > options.quad.tol;
    if (!out.shortfall) break;
  }
  return out;
}

FieldSample packet_field_normal_direct(double x, double t, const TrilayerMedium& medium,
                                       const IncidentPacket& packet,
                                       const FieldOptions& options) {
  require_normal(packet);
  const NormalProblem problem = NormalProblem::from(medium, packet);
  const Integrand integrand = [&](double w) {
    cplx p = packet_profile(problem, x, w, problem.omega0, options.part);
    cplx m = packet_profile(problem, x, w, -problem.omega0, options.part);
    if (options.weight == SpectralWeight::omega) {
      p *= w;
      m *= w;
    }
    const cplx fwd = std::exp(-kI * (w * t));
    const cplx bwd = std::exp(kI * (w * t));
    return cplx{(fwd * p + bwd * m).imag(), (bwd * p + fwd * m).imag()};
  };
  const OscillatorySpec spec =
      normal_spectrum_spec(problem, x, t, options.quad.truncation_widths);
  const IntegrationResult r =
      integrate(integrand, spec, options.quad.tol / std::abs(field_scale(problem.amplitude)),
                {options.quad.max_refinements, 1});
  const double scale = field_scale(problem.amplitude);
  FieldSample out;
  out.x = x;
  out.t = t;
  out.f_plus = scale * r.value.real();
  out.f_minus = scale * r.value.imag();
  out.f = out.f_plus + out.f_minus;
  out.error = std::abs(scale) * r.error;
  out.shortfall = r.shortfall;
  return out;
}

FieldSample packet_field_oblique(double x, double rho_dot_kpar, double t,
                                 const TrilayerMedium& medium, const IncidentPacket& packet,
                                 const FieldOptions& options) {
  packet.validate(medium);
  const double kpar = packet.k0_par;
  const double kx0 = packet.k0_x;
  const double sigma = packet.sigma_x;
  const double xi = packet.x_i;
  const double phase = kx0 * xi + kpar * rho_dot_kpar;
  const cplx carrier = std::exp(kI * phase);
  const double omega_d = ScaleSystem(medium).omega_d();

  const Integrand integrand = [&](double w) {
    const SpectralPoint p = SpectralPoint::at(medium, w, kpar);
    const double k1 = p.k(Layer::left).real();
    const cplx g = green_from_left(x, xi, medium, p, options.part);
    const double env_p = std::exp(-(k1 - kx0) * (k1 - kx0) * sigma * sigma / 2.0);
    const double env_m = std::exp(-(k1 + kx0) * (k1 + kx0) * sigma * sigma / 2.0);
    double weight = w;
    if (options.weight == SpectralWeight::omega) weight *= w / omega_d;
    const cplx phi_p = sigma * env_p * g * carrier * weight;
    const cplx phi_m = sigma * env_m * g * std::conj(carrier) * weight;
    const cplx fwd = std::exp(-kI * (w * t));
    const cplx bwd = std::exp(kI * (w * t));
    return cplx{(fwd * phi_p + bwd * phi_m).imag(), (bwd * phi_p + fwd * phi_m).imag()};
  };

  OscillatorySpec spec;
  spec.omega_min = medium.v1() * kpar;
  spec.center = packet.omega0;
  spec.width = medium.v1() / sigma;
  spec.max_phase_rate = std::abs(t) + (std::abs(x) + std::abs(xi)) / medium.min_velocity() +
                        2.0 * medium.width() / medium.v2();
  spec.truncation_widths = options.quad.truncation_widths;
  spec.breakpoints = {medium.v2() * kpar, medium.v3() * kpar};

  const double scale = field_scale(packet.amplitude);
  const IntegrationResult r = integrate(integrand, spec, options.quad.tol / std::abs(scale),
                                        {options.quad.max_refinements, 1});
  FieldSample out;
  out.x = x;
  out.t = t;
  out.f_plus = scale * r.value.real();
  out.f_minus = scale * r.value.imag();
  out.f = out.f_plus + out.f_minus;
  out.error = std::abs(scale) * r.error;
  out.shortfall = r.shortfall;
  return out;
}

std::pair<double, double> plane_wave_limit(double x, double t, const TrilayerMedium& medium,
                                           double omega0, double amplitude) {
  NormalProblem pr;
  pr.r1 = medium.v2() / medium.v1();
  pr.r3 = medium.v2() / medium.v3();
  pr.x_i = -1.0;
  pr.sigma = 1.0;
  pr.omega0 = omega0;
  pr.amplitude = amplitude;
  // phi at omega = omega0 with unit width, rescaled by v1 / v2.
  const cplx phi1 = packet_profile(pr, x, omega0, omega0) / pr.r1;
  const cplx fwd = std::exp(-kI * (omega0 * t));
  const cplx bwd = std::exp(kI * (omega0 * t));
  return {-amplitude * (fwd * phi1).imag(), -amplitude * (bwd * phi1).imag()};
}

double backward_weight(const TrilayerMedium& medium, double sigma_tilde) noexcept {
  const double r1 = medium.v2() / medium.v1();
  return r1 * r1 * sigma_tilde * sigma_tilde / 2.0;
}

double backward_magnitude(double x, const TrilayerMedium& medium, const IncidentPacket& packet,
                          double tol) {
  const NormalProblem pr = NormalProblem::from(medium, packet);
  OscillatorySpec spec;
  // The envelope peaks at -omega0, outside the range, so on omega >= 0 it
  // decays like exp(-(w omega0 + w^2 / 2) / s^2). Cover the range where the
  // exponent stays below 36 instead of truncating around the peak, which
  // would leave an empty range for wide packets.
  const double s = pr.envelope_width();
  const double upper = -pr.omega0 + std::sqrt(pr.omega0 * pr.omega0 + 72.0 * s * s);
  spec.omega_min = 0.0;
  spec.center = 0.0;
  spec.width = upper / spec.truncation_widths;
  spec.max_phase_rate = std::abs(x) * pr.max_slowness() + 2.0;
  const Integrand integrand = [&](double w) {
    return cplx{std::abs(packet_profile(pr, x, w, -pr.omega0)), 0.0};
  };
  return integrate(integrand, spec, tol).value.real();
}

namespace {

void check_propagator_inputs(double x, double x_prime, const TrilayerMedium& medium, double k_par,
                             const PropagatorOptions& options) {
  if (!(std::isfinite(k_par) && k_par >= 0.0)) throw InvalidArgument("k_par must be >= 0");
  if (!(std::isfinite(options.time_resolution) && options.time_resolution > 0.0)) {
    throw InvalidArgument("time_resolution must be > 0");
  }
  if (!(options.tol > 0.0)) throw InvalidArgument("propagator tol must be > 0");
  require_region_pair(x, x_prime, medium);
}

// Runs body(first, last) over [0, n) in contiguous chunks, one per thread.
template <class Body>
void parallel_chunks(std::size_t n, unsigned threads, Body body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    body(std::size_t{0}, n);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t first = std::min(n, t * chunk);
      const std::size_t last = std::min(n, first + chunk);
      pool.emplace_back([&, t, first, last] {
        try {
          body(first, last);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

PropagatorSpectrum::PropagatorSpectrum(double x, double x_prime, const TrilayerMedium& medium,
                                       double k_par, double tau_max,
                                       const PropagatorOptions& options, int refinement)
    : tau_max_(std::abs(tau_max)) {
  check_propagator_inputs(x, x_prime, medium, k_par, options);
  const double eta = options.time_resolution * ScaleSystem(medium).t_d();

  OscillatorySpec spec;
  spec.omega_min = medium.v1() * k_par;
  spec.center = 0.0;
  spec.width = 1.0 / eta;
  spec.max_phase_rate = (std::abs(x) + std::abs(x_prime)) / medium.min_velocity() + tau_max_ +
                        2.0 * medium.width() / medium.v2();
  spec.truncation_widths = options.truncation_widths;
  spec.breakpoints = {medium.v2() * k_par, medium.v3() * k_par};

  const PanelLayout layout = panel_layout(spec, refinement);
  const std::size_t n = layout.nodes.size();
  omega_ = layout.nodes;
  zero_.assign(n, 0.0);
  b_.resize(n);
  eb_.resize(n);
  const double scale = 2.0 / std::numbers::pi;
  parallel_chunks(n, options.threads, [&](std::size_t first, std::size_t last) {
    for (std::size_t j = first; j < last; ++j) {
      const double w = omega_[j];
      const double wk = layout.kronrod[j];
      if (wk == 0.0 && layout.gauss[j] == 0.0) {
        b_[j] = eb_[j] = 0.0;  // pad slot
        continue;
      }
      const SpectralPoint p = SpectralPoint::at(medium, w, k_par);
      const double smooth = std::exp(-(w * eta) * (w * eta) / 2.0);
      const double v = scale * green_retarded(x, x_prime, medium, p).imag() * smooth;
      if (!std::isfinite(v)) throw NonFiniteIntegrand(w);
      b_[j] = wk * v;
      eb_[j] = (wk - layout.gauss[j]) * v;
    }
  });
}

PropagatorSample PropagatorSpectrum::evaluate(double tau, simd::Kernel kernel) const {
  if (std::abs(tau) > tau_max_) {
    throw InvalidArgument("propagator table built for |tau| <= " + std::to_string(tau_max_));
  }
  const simd::SpectralColumns cols{omega_, zero_, b_, zero_, eb_, kNodesPerPanel,
                                   omega_.empty() ? 0.0 : std::max(std::abs(omega_.front()),
                                                                   std::abs(omega_.back()))};
  const simd::OscillatorySums s = simd::oscillatory_sums(kernel, cols, std::abs(tau));
  const double sign = tau < 0.0 ? -1.0 : 1.0;
  return {sign * s.sin_sum, s.error, false};
}

std::vector<PropagatorSample> propagator_samples(double x, double x_prime,
                                                 const std::vector<double>& taus,
                                                 const TrilayerMedium& medium, double k_par,
                                                 const PropagatorOptions& options) {
  check_propagator_inputs(x, x_prime, medium, k_par, options);
  const simd::Kernel kernel = simd::resolve_kernel(options.kernel);
  double tau_max = 0.0;
  for (double tau : taus) {
    if (!std::isfinite(tau)) throw InvalidArgument("tau must be finite");
    tau_max = std::max(tau_max, std::abs(tau));
  }
  std::vector<PropagatorSample> out(taus.size());
  std::vector<std::size_t> pending(taus.size());
  for (std::size_t i = 0; i < pending.size(); ++i) pending[i] = i;
  const int max_ref = std::max(0, options.max_refinements);
  for (int ref = 0; ref <= max_ref && !pending.empty(); ++ref) {
    const PropagatorSpectrum table(x, x_prime, medium, k_par, tau_max, options, ref);
    std::vector<std::size_t> still;
    for (std::size_t i : pending) {
      out[i] = table.evaluate(taus[i], kernel);
      out[i].shortfall = out[i].error > options.tol;
      if (out[i].shortfall) still.push_back(i);
    }
    pending = std::move(still);
  }
  return out;
}

PropagatorSample propagator_sample(double x, double x_prime, double tau,
                                   const TrilayerMedium& medium, double k_par,
                                   const PropagatorOptions& options) {
  return propagator_samples(x, x_prime, {tau}, medium, k_par, options).front();
}

double propagator_g(double x, double x_prime, double tau, const TrilayerMedium& medium,
                    double k_par, const PropagatorOptions& options) {
  return propagator_sample(x, x_prime, tau, medium, k_par, options).value;
}

double free_propagator_closed(double x, double x_prime, double t, double v) noexcept {
  if (!(v * std::abs(t) > std::abs(x - x_prime))) return 0.0;
  const double sign = t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0);
  return -sign / (2.0 * v);
}

}  // namespace trilayer
