#pragma once

#include "trilayer/media.hpp"

namespace trilayer {

/// One interface seen from both sides: ">" is the right-hand layer, "<" the
/// left-hand one.
struct StepContext {
  cplx k_gt;
  cplx k_lt;
  double v_gt = 1.0;
  double v_lt = 1.0;
};

enum class Interface { at_zero, at_d };

/// Step context of interface 0 (layers 1|2) or d (layers 2|3).
StepContext interface_context(const TrilayerMedium& medium, const SpectralPoint& p,
                              Interface where) noexcept;

/// Square root on the Im >= 0 branch, applied factor by factor.
cplx branch_sqrt(const cplx& k) noexcept;

struct StepAmplitudes {
  cplx r_gt;
  cplx r_lt;
  cplx t;
};

/// Flux-normalized reflection/transmission amplitudes of a single step.
/// Throws DegenerateSpectralPoint when k_gt + k_lt == 0.
StepAmplitudes step_amplitudes(const StepContext& ctx);

struct FresnelAmplitudes {
  double r_gt;
  double t;
};

/// Perpendicular-polarization Fresnel form of step_amplitudes with
/// cos(phi) = k_perp / k and n_ratio = k_gt / k_lt.
FresnelAmplitudes fresnel_amplitudes(double n_ratio, double cos_gt, double cos_lt);

struct EffectivePotentials {
  cplx h_gt;
  cplx h_lt;
  cplx h_cross;
};

/// Strengths of the delta potentials that reproduce the step amplitudes
/// inside a Born series.
EffectivePotentials effective_potentials(const StepContext& ctx) noexcept;

enum class Channel { reflect_gt, reflect_lt, cross };

/// Free Green function evaluated at the interface for the given channel.
/// Throws ChannelCutoff when the relevant k_perp vanishes.
cplx interface_green(const StepContext& ctx, Channel channel);

/// G0 * H1 for the channel: the ratio of the Born series.
cplx born_ratio(const StepContext& ctx, Channel channel);

/// Resummed T-matrix H1 / (1 - G0 H1). Throws PoleError if 1 - G0 H1 == 0.
cplx t_matrix(const StepContext& ctx, Channel channel);

/// Closed form 2i v^2 k r (reflection) or 2i v_gt v_lt sqrt(k_gt) sqrt(k_lt) t
/// (transmission).
cplx t_matrix_closed(const StepContext& ctx, Channel channel);

/// Partial sum of the Born series, n_terms >= 1.
cplx t_matrix_series(const StepContext& ctx, Channel channel, int n_terms);

}  // namespace trilayer
