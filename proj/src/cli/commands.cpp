#include "trilayer/cli/commands.hpp"

#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>

#include "trilayer/cli/csv.hpp"
#include "trilayer/field_grid.hpp"
#include "trilayer/trilayer_green.hpp"

#ifndef TRILAYER_VERSION
#define TRILAYER_VERSION "0.0.0"
#endif

namespace trilayer::cli {

namespace {

constexpr std::string_view kVersion = TRILAYER_VERSION;

void write_preamble(CsvWriter& csv, std::string_view mode, const RunConfig& cfg) {
  csv.comment("trilayer " + std::string(mode) + " v" + std::string(kVersion));
  csv.metadata("config", cfg.echo());
}

std::vector<std::pair<std::string, std::string>> engine_lines(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("version", std::string(kVersion));
  if (cfg.uses_physical_medium()) {
    const ScaleSystem scale(cfg.medium());
    out.emplace_back("omega_d_rad_per_s", format_double(scale.omega_d()));
    out.emplace_back("t_d_s", format_double(scale.t_d()));
  }
  return out;
}

std::string field_plot(const RunConfig& cfg) {
  std::ostringstream gp;
  gp << "# f_plus sqrt(2 pi) / C over the (t, x) grid of field.csv\n"
     << "set datafile separator ','\n"
     << "set key autotitle columnhead\n"
     << "set terminal pngcairo size 900,700\n"
     << "set output 'field.png'\n"
     << "set xlabel 't (d/v2)'\n"
     << "set ylabel 'x (d)'\n"
     << "set view map\n"
     << "C = " << format_double(cfg.real("packet.amplitude")) << "\n"
     << "plot 'field.csv' using 2:1:($3*sqrt(2*pi)/C) with image notitle\n";
  return gp.str();
}

std::string scan_plot() {
  return "set datafile separator ','\n"
         "set key autotitle columnhead\n"
         "set terminal pngcairo size 900,600\n"
         "set output 'scan.png'\n"
         "set xlabel 'omega (v2/d)'\n"
         "plot 'scan.csv' using 1:2 with lines title '|t|^2', "
         "'' using 1:3 with lines title '|r|^2'\n";
}

std::string propagator_plot() {
  return "set datafile separator ','\n"
         "set key autotitle columnhead\n"
         "set terminal pngcairo size 900,600\n"
         "set output 'propagator.png'\n"
         "set xlabel 'tau (d/v2)'\n"
         "plot 'propagator.csv' using 1:2 with lines notitle\n";
}

}  // namespace

Rendered render_scan(const RunConfig& cfg) {
  cfg.validate();
  const TrilayerMedium medium = cfg.medium();
  const ScaleSystem scale(medium);
  const std::vector<double> omegas = linspace(cfg.real("scan.omega_min"), cfg.real("scan.omega_max"),
                                              static_cast<std::size_t>(cfg.integer("scan.steps")));
  const double k_par = cfg.real("scan.k_par") / scale.length_unit();

  std::ostringstream out;
  CsvWriter csv(out);
  write_preamble(csv, "scan", cfg);
  csv.metadata("engine", engine_lines(cfg));
  csv.header({"omega_tilde", "t2", "r2", "sum"});
  for (double w : omegas) {
    const SpectralPoint p = SpectralPoint::at(medium, w * scale.omega_d(), k_par);
    if (!p.propagating()) {
      throw ConfigError("scan range reaches an evanescent point at omega_tilde = " +
                        format_double(w));
    }
    const Probabilities pr = probabilities(medium, p);
    csv.row({w, pr.transmission, pr.reflection, pr.transmission + pr.reflection});
  }
  Rendered r;
  r.data = out.str();
  if (cfg.boolean("output.plot")) r.plot = scan_plot();
  return r;
}

Rendered render_field(const RunConfig& cfg, unsigned threads) {
  cfg.validate();
  FieldGridRequest req{cfg.medium(), cfg.packet(), {}, {}, cfg.field_options(),
                       cfg.real("packet.rho"), threads};
  req.x_axis = linspace(cfg.real("grid.x_min"), cfg.real("grid.x_max"),
                        static_cast<std::size_t>(cfg.integer("grid.x_steps")));
  req.t_axis = linspace(cfg.real("grid.t_min"), cfg.real("grid.t_max"),
                        static_cast<std::size_t>(cfg.integer("grid.t_steps")));
  const FieldGrid grid = evaluate_field_grid(req);
  const simd::Kernel kernel = simd::resolve_kernel(req.options.quad.kernel);

  std::ostringstream out;
  CsvWriter csv(out);
  write_preamble(csv, "field", cfg);
  auto engine = engine_lines(cfg);
  engine.emplace_back("path", req.packet.k0_par > 0.0 ? "oblique" : "normal");
  engine.emplace_back("kernel", std::string(simd::kernel_name(kernel)));
  engine.emplace_back("max_error", format_double(grid.max_error));
  engine.emplace_back("shortfall", grid.shortfall ? "true" : "false");
  csv.metadata("engine", engine);
  csv.header({"x_tilde", "t_tilde", "f_plus", "f_minus", "f"});
  for (const FieldSample& s : grid.samples) csv.row({s.x, s.t, s.f_plus, s.f_minus, s.f});

  Rendered r;
  r.data = out.str();
  r.shortfall = grid.shortfall;
  if (cfg.boolean("output.plot")) r.plot = field_plot(cfg);
  return r;
}

Rendered render_propagator(const RunConfig& cfg, unsigned threads) {
  cfg.validate();
  const TrilayerMedium medium = cfg.medium();
  const ScaleSystem scale(medium);
  const double d = scale.length_unit();
  const double x = cfg.real("propagator.x") * d;
  const double x_prime = cfg.real("propagator.x_prime") * d;
  try {
    require_region_pair(x, x_prime, medium);
  } catch (const UnsupportedRegion& e) {
    throw ConfigError(std::string("propagator.x / propagator.x_prime: ") + e.what());
  }
  PropagatorOptions opts = cfg.propagator_options();
  opts.threads = threads;
  const double k_par = cfg.real("propagator.k_par") / d;
  const std::vector<double> taus =
      linspace(cfg.real("propagator.tau_min"), cfg.real("propagator.tau_max"),
               static_cast<std::size_t>(cfg.integer("propagator.tau_steps")));

  std::ostringstream body;
  CsvWriter rows(body);
  bool shortfall = false;
  double max_error = 0.0;
  std::vector<double> physical(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) physical[i] = taus[i] * scale.t_d();
  const std::vector<PropagatorSample> samples =
      propagator_samples(x, x_prime, physical, medium, k_par, opts);
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const PropagatorSample& g = samples[i];
    shortfall = shortfall || g.shortfall;
    max_error = std::max(max_error, g.error * medium.v2());
    // Scaled propagator: g in units of 1/v2.
    rows.row({taus[i], g.value * medium.v2()});
  }

  std::ostringstream out;
  CsvWriter csv(out);
  write_preamble(csv, "propagator", cfg);
  auto engine = engine_lines(cfg);
  engine.emplace_back("max_error", format_double(max_error));
  engine.emplace_back("shortfall", shortfall ? "true" : "false");
  csv.metadata("engine", engine);
  csv.header({"tau_tilde", "g_tilde"});
  Rendered r;
  r.data = out.str() + body.str();
  r.shortfall = shortfall;
  if (cfg.boolean("output.plot")) r.plot = propagator_plot();
  return r;
}

Rendered render_verify(const RunConfig& cfg, const VerifyHooks& hooks) {
  cfg.validate();
  VerifySettings s;
  s.points = static_cast<std::size_t>(cfg.integer("verify.points"));
  s.seed = static_cast<std::uint64_t>(cfg.integer("verify.seed"));
  s.field = cfg.field_options();
  s.propagator = cfg.propagator_options();
  const VerifyReport report = run_verification(s, hooks);
  Rendered r;
  r.data = report.to_json();
  r.failed = !report.passed();
  return r;
}

int run_command(std::string_view mode, const CommandOptions& options, std::ostream& log,
                const VerifyHooks& hooks) {
  try {
    RunConfig cfg = options.config_path ? RunConfig::load(*options.config_path) : RunConfig();
    if (options.seed) cfg.set("verify.seed", std::to_string(*options.seed));
    for (const std::string& w : cfg.warnings()) log << "warning: " << w << '\n';

    Rendered r;
    std::string data_name = std::string(mode) + ".csv";
    if (mode == "scan") {
      r = render_scan(cfg);
    } else if (mode == "field") {
      r = render_field(cfg, options.threads);
    } else if (mode == "propagator") {
      r = render_propagator(cfg, options.threads);
    } else if (mode == "verify") {
      r = render_verify(cfg, hooks);
      data_name = "verify.json";
    } else {
      throw ConfigError("unknown command '" + std::string(mode) + "'");
    }

    const std::filesystem::path dir(options.out_dir);
    std::filesystem::create_directories(dir);
    write_file((dir / data_name).string(), r.data);
    if (!r.plot.empty()) write_file((dir / (std::string(mode) + ".gp")).string(), r.plot);

    if (mode == "verify") {
      log << r.data;
      if (r.failed) {
        log << "error: verification failed\n";
        return kExitVerification;
      }
    }
    if (r.shortfall) {
      log << "error: quadrature error estimate exceeds quadrature.tol\n";
      return kExitShortfall;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const UnsupportedRegion& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitShortfall;
  }
}

}  // namespace trilayer::cli
