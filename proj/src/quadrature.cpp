#include "trilayer/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "trilayer/errors.hpp"

namespace trilayer {

namespace {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// Geometric grading levels towards a square-root endpoint.
constexpr int kGradingLevels = 30;

struct Panel {
  double a;
  double b;
};

void append_panel(PanelLayout& out, const Panel& p) {
  const double c = 0.5 * (p.a + p.b);
  const double h = 0.5 * (p.b - p.a);
  for (std::size_t i = 0; i < 15; ++i) {
    // Slots 0..6 left of the center, 7 the center, 8..14 right of it.
    const std::size_t j = i <= 7 ? i : 14 - i;
    const double offset = h * kXgk[j];
    out.nodes.push_back(i < 7 ? c - offset : (i == 7 ? c : c + offset));
    out.kronrod.push_back(h * kWgk[j]);
    double g = 0.0;
    if (j % 2 == 1) g = h * kWg[j / 2];  // G7 nodes, center included
    out.gauss.push_back(g);
  }
  out.nodes.push_back(c);
  out.kronrod.push_back(0.0);
  out.gauss.push_back(0.0);
}

std::vector<Panel> graded_toward_left(double a, double b) {
  // [a, a + w 2^-L], [a + w 2^-L, a + w 2^-(L-1)], ..., [a + w/2, b]
  const double w = b - a;
  std::vector<Panel> out;
  double lo = a;
  for (int level = kGradingLevels; level >= 1; --level) {
    const double hi = a + std::ldexp(w, -level);
    out.push_back({lo, hi});
    lo = hi;
  }
  out.push_back({lo, b});
  return out;
}

void append_graded(std::vector<Panel>& panels, double a, double b, bool toward_left) {
  if (toward_left) {
    const auto graded = graded_toward_left(a, b);
    panels.insert(panels.end(), graded.begin(), graded.end());
    return;
  }
  const auto mirror = graded_toward_left(0.0, b - a);
  const std::size_t first = panels.size();
  for (auto it = mirror.rbegin(); it != mirror.rend(); ++it) {
    panels.push_back({b - it->b, b - it->a});
  }
  panels[first].a = a;
  panels.back().b = b;
}

}  // namespace

double OscillatorySpec::lower() const noexcept {
  return std::max(omega_min, center - truncation_widths * width);
}

double OscillatorySpec::upper() const noexcept {
  return std::max(omega_min, center + truncation_widths * width);
}

double OscillatorySpec::panel_width() const noexcept {
  double h = width / 8.0;
  if (max_phase_rate > 0.0) h = std::min(h, std::numbers::pi / (8.0 * max_phase_rate));
  return h;
}

void OscillatorySpec::validate() const {
  if (!(std::isfinite(omega_min) && omega_min >= 0.0)) {
    throw InvalidArgument("omega_min must be finite and >= 0");
  }
  if (!(std::isfinite(width) && width > 0.0)) {
    throw InvalidArgument("envelope width must be finite and > 0");
  }
  if (!std::isfinite(center)) throw InvalidArgument("envelope center must be finite");
  if (!(std::isfinite(max_phase_rate) && max_phase_rate >= 0.0)) {
    throw InvalidArgument("max_phase_rate must be finite and >= 0");
  }
  if (!(std::isfinite(truncation_widths) && truncation_widths > 0.0)) {
    throw InvalidArgument("truncation_widths must be finite and > 0");
  }
}

PanelLayout panel_layout(const OscillatorySpec& spec, int refinement) {
  spec.validate();
  PanelLayout out;
  const double lo = spec.lower();
  const double hi = spec.upper();
  if (!(hi > lo)) return out;

  std::vector<double> cuts{lo};
  std::vector<double> inner;
  for (double b : spec.breakpoints) {
    if (b > lo && b < hi) inner.push_back(b);
  }
  std::sort(inner.begin(), inner.end());
  inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
  cuts.insert(cuts.end(), inner.begin(), inner.end());
  cuts.push_back(hi);

  const double h = std::ldexp(spec.panel_width(), -refinement);
  const bool floor_is_kink = spec.omega_min > 0.0 && lo == spec.omega_min;

  std::vector<Panel> panels;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double a = cuts[s];
    const double b = cuts[s + 1];
    const bool kink_left = s > 0 || floor_is_kink;
    const bool kink_right = s + 2 < cuts.size();
    std::size_t n = static_cast<std::size_t>(std::ceil((b - a) / h));
    n = std::max<std::size_t>(n, 1);
    if ((kink_left || kink_right) && n < 2) n = 2;
    const double step = (b - a) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double pa = a + step * static_cast<double>(i);
      const double pb = i + 1 == n ? b : a + step * static_cast<double>(i + 1);
      if (i == 0 && kink_left) {
        append_graded(panels, pa, pb, true);
      } else if (i + 1 == n && kink_right) {
        append_graded(panels, pa, pb, false);
      } else {
        panels.push_back({pa, pb});
      }
    }
  }

  out.nodes.reserve(panels.size() * kNodesPerPanel);
  out.kronrod.reserve(panels.size() * kNodesPerPanel);
  out.gauss.reserve(panels.size() * kNodesPerPanel);
  for (const Panel& p : panels) append_panel(out, p);
  return out;
}

double pairwise_sum(const double* values, std::size_t n) noexcept {
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += values[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values, half) + pairwise_sum(values + half, n - half);
}

namespace {

struct PanelSums {
  std::vector<double> re;
  std::vector<double> im;
  std::vector<double> err;
};

void evaluate_panels(const Integrand& f, const PanelLayout& layout, std::size_t first,
                     std::size_t last, PanelSums& out) {
  for (std::size_t p = first; p < last; ++p) {
    cplx k{};
    cplx g{};
    const std::size_t base = p * kNodesPerPanel;
    for (std::size_t i = 0; i < 15; ++i) {
      const double omega = layout.nodes[base + i];
      const cplx v = f(omega);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw NonFiniteIntegrand(omega);
      }
      k += layout.kronrod[base + i] * v;
      g += layout.gauss[base + i] * v;
    }
    out.re[p] = k.real();
    out.im[p] = k.imag();
    out.err[p] = std::abs(k - g);
  }
}

}  // namespace

IntegrationResult integrate(const Integrand& f, const OscillatorySpec& spec, double tol,
                            const QuadratureOptions& options) {
  if (!(tol > 0.0)) throw InvalidArgument("integrate: tol must be > 0");
  IntegrationResult result;
  const int max_ref = std::max(0, options.max_refinements);
  for (int ref = 0; ref <= max_ref; ++ref) {
    const PanelLayout layout = panel_layout(spec, ref);
    const std::size_t n = layout.panel_count();
    PanelSums sums{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};

    const unsigned threads = std::max(1u, std::min<unsigned>(options.threads,
                                                             static_cast<unsigned>(n)));
    if (threads <= 1) {
      evaluate_panels(f, layout, 0, n, sums);
    } else {
      std::vector<std::exception_ptr> errors(threads);
      {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (n + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
          const std::size_t first = std::min(n, t * chunk);
          const std::size_t last = std::min(n, first + chunk);
          pool.emplace_back([&, t, first, last] {
            try {
              evaluate_panels(f, layout, first, last, sums);
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

    result.value = {pairwise_sum(sums.re.data(), n), pairwise_sum(sums.im.data(), n)};
    result.error = pairwise_sum(sums.err.data(), n);
    result.panels = n;
    result.refinements = ref;
    result.shortfall = result.error > tol;
    if (!result.shortfall) break;
  }
  return result;
}

}  // namespace trilayer
