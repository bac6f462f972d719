#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "trilayer/media.hpp"

namespace trilayer {

/// Integration range and resolution for an oscillatory integrand with a
/// Gaussian envelope exp(-(omega - center)^2 / (2 width^2)).
struct OscillatorySpec {
  double omega_min = 0.0;        ///< hard floor (e.g. v1 * k_par)
  double center = 0.0;
  double width = 1.0;            ///< standard deviation of the envelope
  double max_phase_rate = 0.0;   ///< bound on |d phase / d omega|
  double truncation_widths = 7.5;
  /// Interior points where the integrand has a square-root kink (channel
  /// cutoffs). Panels are aligned and graded towards them.
  std::vector<double> breakpoints;

  double lower() const noexcept;
  double upper() const noexcept;
  /// Nominal panel width: min(pi / (8 max_phase_rate), width / 8).
  double panel_width() const noexcept;
  void validate() const;
};

/// Gauss-Kronrod 7/15 panels stored 16 nodes per panel; the last slot of
/// every panel is padding with zero weights.
inline constexpr std::size_t kNodesPerPanel = 16;

struct PanelLayout {
  std::vector<double> nodes;
  std::vector<double> kronrod;  ///< K15 weights, scaled to the panel
  std::vector<double> gauss;    ///< G7 weights on the K15 nodes, zero elsewhere

  std::size_t panel_count() const noexcept { return nodes.size() / kNodesPerPanel; }
};

/// Panels covering [spec.lower(), spec.upper()]. Each refinement halves the
/// nominal panel width. Nodes are strictly interior to every panel.
PanelLayout panel_layout(const OscillatorySpec& spec, int refinement = 0);

struct QuadratureOptions {
  int max_refinements = 3;
  unsigned threads = 1;
};

struct IntegrationResult {
  cplx value;
  double error = 0.0;  ///< sum over panels of |K15 - G7|
  std::size_t panels = 0;
  int refinements = 0;
  bool shortfall = false;  ///< error > tol after the last refinement
};

using Integrand = std::function<cplx(double)>;

/// Fixed-density panel quadrature. If the error estimate exceeds tol the
/// panel density is doubled, up to options.max_refinements times. The
/// reduction is a pairwise tree over panel indices, so the result does not
/// depend on options.threads. Throws NonFiniteIntegrand.
IntegrationResult integrate(const Integrand& f, const OscillatorySpec& spec, double tol,
                            const QuadratureOptions& options = {});

/// Pairwise (tree) sum in index order.
double pairwise_sum(const double* values, std::size_t n) noexcept;

}  // namespace trilayer
