#include "trilayer/field_grid.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <memory>
#include <thread>

#include "trilayer/errors.hpp"

namespace trilayer {

namespace {

void evaluate_row(const FieldGridRequest& req, const NormalProblem* normal, simd::Kernel kernel,
                  double t_max, std::size_t ix, FieldSample* row) {
  const double x = req.x_axis[ix];
  const std::size_t nt = req.t_axis.size();
  const QuadratureSettings& q = req.options.quad;
  const int max_ref = std::max(0, q.max_refinements);

  if (normal == nullptr) {
    const double d = req.medium.width();
    const double td = ScaleSystem(req.medium).t_d();
    for (std::size_t it = 0; it < nt; ++it) {
      const double t = req.t_axis[it];
      FieldSample s =
          packet_field_oblique(x * d, req.rho_dot_kpar * d, t * td, req.medium, req.packet,
                               req.options);
      s.x = x;
      s.t = t;
      row[it] = s;
    }
    return;
  }

  std::vector<std::unique_ptr<PacketSpectrum>> tables(static_cast<std::size_t>(max_ref) + 1);
  for (std::size_t it = 0; it < nt; ++it) {
    const double t = req.t_axis[it];
    FieldSample s;
    for (int ref = 0; ref <= max_ref; ++ref) {
      auto& table = tables[static_cast<std::size_t>(ref)];
      if (!table) table = std::make_unique<PacketSpectrum>(*normal, x, t_max, req.options, ref);
      s = table->evaluate(t, kernel);
      s.shortfall = s.error > q.tol;
      if (!s.shortfall) break;
    }
    row[it] = s;
  }
}

}  // namespace

FieldGrid evaluate_field_grid(const FieldGridRequest& req) {
  if (req.x_axis.empty() || req.t_axis.empty()) throw InvalidArgument("field grid axes are empty");
  req.packet.validate(req.medium);
  const bool oblique = req.packet.k0_par > 0.0;
  NormalProblem normal;
  if (!oblique) normal = NormalProblem::from(req.medium, req.packet);
  const simd::Kernel kernel = simd::resolve_kernel(req.options.quad.kernel);
  double t_max = 0.0;
  for (double t : req.t_axis) t_max = std::max(t_max, std::abs(t));

  FieldGrid grid;
  grid.x_axis = req.x_axis;
  grid.t_axis = req.t_axis;
  const std::size_t nx = req.x_axis.size();
  const std::size_t nt = req.t_axis.size();
  grid.samples.resize(nx * nt);

  const unsigned threads =
      std::max(1u, std::min<unsigned>(req.threads, static_cast<unsigned>(nx)));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  auto worker = [&](unsigned id) {
    try {
      for (std::size_t ix = next++; ix < nx; ix = next++) {
        evaluate_row(req, oblique ? nullptr : &normal, kernel, t_max, ix,
                     grid.samples.data() + ix * nt);
      }
    } catch (...) {
      errors[id] = std::current_exception();
      next = nx;
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned id = 0; id < threads; ++id) pool.emplace_back(worker, id);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (const FieldSample& s : grid.samples) {
    grid.max_error = std::max(grid.max_error, s.error);
    grid.shortfall = grid.shortfall || s.shortfall;
  }
  return grid;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n < 2) throw InvalidArgument("linspace needs at least 2 points");
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw InvalidArgument("linspace range not finite");
  std::vector<double> out(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

namespace {

double uniform_step(const std::vector<double>& axis, const char* name) {
  if (axis.size() < 5) throw InvalidArgument(std::string(name) + " axis needs >= 5 points");
  const double h = (axis.back() - axis.front()) / static_cast<double>(axis.size() - 1);
  for (std::size_t i = 1; i < axis.size(); ++i) {
    if (std::abs(axis[i] - axis[i - 1] - h) > 1e-9 * std::abs(h)) {
      throw InvalidArgument(std::string(name) + " axis is not uniform");
    }
  }
  if (!(h > 0.0)) throw InvalidArgument(std::string(name) + " axis must increase");
  return h;
}

double second_difference(double m2, double m1, double c, double p1, double p2, double h) {
  return (-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * h * h);
}

}  // namespace

ResidualField wave_equation_residual(const FieldGrid& grid, const TrilayerMedium& medium,
                                     double omega0) {
  const double hx = uniform_step(grid.x_axis, "x");
  const double ht = uniform_step(grid.t_axis, "t");
  if (!(omega0 > 0.0)) throw InvalidArgument("omega0 must be > 0");
  const std::size_t nx = grid.x_axis.size();
  const std::size_t nt = grid.t_axis.size();
  const double d = medium.width();

  double fmax = 0.0;
  for (const FieldSample& s : grid.samples) fmax = std::max(fmax, std::abs(s.f));
  const double norm = fmax * omega0 * omega0;

  ResidualField out;
  out.too_coarse = std::max(hx, ht) > 1.0 / (8.0 * omega0);
  for (std::size_t it = 2; it + 2 < nt; ++it) out.t.push_back(grid.t_axis[it]);

  auto layer_at = [&](double x) { return layer_of(x * d, medium).layer; };
  auto on_interface = [](double x) { return x == 0.0 || x == 1.0; };
  for (std::size_t ix = 2; ix + 2 < nx; ++ix) {
    const Layer layer = layer_at(grid.x_axis[ix]);
    bool fits = true;
    for (std::size_t k = ix - 2; k <= ix + 2; ++k) {
      fits = fits && layer_at(grid.x_axis[k]) == layer && !on_interface(grid.x_axis[k]);
    }
    if (!fits) continue;
    out.x.push_back(grid.x_axis[ix]);
    const double v = medium.velocity(layer) / medium.v2();
    for (std::size_t it = 2; it + 2 < nt; ++it) {
      const double ftt = second_difference(grid.at(ix, it - 2).f, grid.at(ix, it - 1).f,
                                           grid.at(ix, it).f, grid.at(ix, it + 1).f,
                                           grid.at(ix, it + 2).f, ht);
      const double fxx = second_difference(grid.at(ix - 2, it).f, grid.at(ix - 1, it).f,
                                           grid.at(ix, it).f, grid.at(ix + 1, it).f,
                                           grid.at(ix + 2, it).f, hx);
      const double r = norm > 0.0 ? (ftt - v * v * fxx) / norm : 0.0;
      out.values.push_back(r);
      out.max_abs = std::max(out.max_abs, std::abs(r));
    }
  }
  return out;
}

}  // namespace trilayer
