#include "trilayer/step_scattering.hpp"

#include <cmath>

#include "trilayer/errors.hpp"

namespace trilayer {

namespace {

constexpr cplx kI{0.0, 1.0};

bool is_zero(const cplx& z) { return z.real() == 0.0 && z.imag() == 0.0; }

double channel_velocity_squared(const StepContext& ctx, Channel channel) {
  switch (channel) {
    case Channel::reflect_gt: return ctx.v_gt * ctx.v_gt;
    case Channel::reflect_lt: return ctx.v_lt * ctx.v_lt;
    case Channel::cross: return ctx.v_gt * ctx.v_lt;
  }
  return 0.0;
}

}  // namespace

StepContext interface_context(const TrilayerMedium& medium, const SpectralPoint& p,
                              Interface where) noexcept {
  if (where == Interface::at_zero) {
    return {p.k(Layer::spacer), p.k(Layer::left), medium.v2(), medium.v1()};
  }
  return {p.k(Layer::right), p.k(Layer::spacer), medium.v3(), medium.v2()};
}

cplx branch_sqrt(const cplx& k) noexcept {
  // Principal sqrt of a value with Im >= 0 lands in the first quadrant.
  if (k.imag() == 0.0 && k.real() >= 0.0) return {std::sqrt(k.real()), 0.0};
  return std::sqrt(k);
}

StepAmplitudes step_amplitudes(const StepContext& ctx) {
  const cplx sum = ctx.k_gt + ctx.k_lt;
  if (is_zero(sum)) {
    throw DegenerateSpectralPoint("step amplitudes undefined: k_gt + k_lt = 0");
  }
  const cplx r_gt = (ctx.k_gt - ctx.k_lt) / sum;
  const cplx t = 2.0 * branch_sqrt(ctx.k_gt) * branch_sqrt(ctx.k_lt) / sum;
  return {r_gt, -r_gt, t};
}

FresnelAmplitudes fresnel_amplitudes(double n_ratio, double cos_gt, double cos_lt) {
  if (!(n_ratio > 0.0) || !(cos_gt > 0.0 && cos_gt <= 1.0) ||
      !(cos_lt > 0.0 && cos_lt <= 1.0)) {
    throw InvalidArgument("fresnel_amplitudes: need n > 0 and cosines in (0, 1]");
  }
  const double a = n_ratio * cos_gt;
  const double den = a + cos_lt;
  return {(a - cos_lt) / den, 2.0 * std::sqrt(a * cos_lt) / den};
}

EffectivePotentials effective_potentials(const StepContext& ctx) noexcept {
  const cplx diff = ctx.k_gt - ctx.k_lt;
  const cplx root_sum = branch_sqrt(ctx.k_gt) + branch_sqrt(ctx.k_lt);
  EffectivePotentials h;
  h.h_gt = kI * ctx.v_gt * ctx.v_gt * diff;
  h.h_lt = -kI * ctx.v_lt * ctx.v_lt * diff;
  h.h_cross = 4.0 * kI * ctx.v_gt * ctx.v_lt * ctx.k_gt * ctx.k_lt /
              (root_sum * root_sum);
  return h;
}

cplx interface_green(const StepContext& ctx, Channel channel) {
  cplx k;
  switch (channel) {
    case Channel::reflect_gt: k = ctx.k_gt; break;
    case Channel::reflect_lt: k = ctx.k_lt; break;
    case Channel::cross: k = branch_sqrt(ctx.k_gt) * branch_sqrt(ctx.k_lt); break;
  }
  if (is_zero(k)) {
    throw ChannelCutoff("interface Green function diverges at k_perp = 0");
  }
  return 1.0 / (2.0 * kI * channel_velocity_squared(ctx, channel) * k);
}

namespace {

cplx potential(const StepContext& ctx, Channel channel) {
  const EffectivePotentials h = effective_potentials(ctx);
  switch (channel) {
    case Channel::reflect_gt: return h.h_gt;
    case Channel::reflect_lt: return h.h_lt;
    case Channel::cross: return h.h_cross;
  }
  return {};
}

}  // namespace

cplx born_ratio(const StepContext& ctx, Channel channel) {
  return interface_green(ctx, channel) * potential(ctx, channel);
}

cplx t_matrix(const StepContext& ctx, Channel channel) {
  const cplx h = potential(ctx, channel);
  const cplx den = 1.0 - interface_green(ctx, channel) * h;
  if (is_zero(den)) throw PoleError("T-matrix pole: 1 - G0 H1 = 0");
  return h / den;
}

cplx t_matrix_closed(const StepContext& ctx, Channel channel) {
  const StepAmplitudes amp = step_amplitudes(ctx);
  switch (channel) {
    case Channel::reflect_gt:
      return 2.0 * kI * ctx.v_gt * ctx.v_gt * ctx.k_gt * amp.r_gt;
    case Channel::reflect_lt:
      return 2.0 * kI * ctx.v_lt * ctx.v_lt * ctx.k_lt * amp.r_lt;
    case Channel::cross:
      return 2.0 * kI * ctx.v_gt * ctx.v_lt * branch_sqrt(ctx.k_gt) *
             branch_sqrt(ctx.k_lt) * amp.t;
  }
  return {};
}

cplx t_matrix_series(const StepContext& ctx, Channel channel, int n_terms) {
  if (n_terms < 1) throw InvalidArgument("t_matrix_series needs n_terms >= 1");
  const cplx h = potential(ctx, channel);
  const cplx ratio = interface_green(ctx, channel) * h;
  cplx term = h;
  cplx sum = h;
  for (int m = 1; m < n_terms; ++m) {
    term *= ratio;
    sum += term;
  }
  return sum;
}

}  // namespace trilayer
