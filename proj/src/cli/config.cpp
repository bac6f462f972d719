#include "trilayer/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "trilayer/cli/csv.hpp"

namespace trilayer::cli {

namespace {

constexpr std::string_view kEchoPrefix = "# config:";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

const KeySpec* find_key(std::string_view name) {
  for (const KeySpec& k : known_keys()) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

double parse_real(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError(std::string(key) + ": expected a finite number, got '" +
                      std::string(text) + "'");
  }
  return v;
}

std::int64_t parse_integer(std::string_view key, std::string_view text) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(key) + ": expected an integer, got '" + std::string(text) +
                      "'");
  }
  return v;
}

bool parse_boolean(std::string_view key, std::string_view text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw ConfigError(std::string(key) + ": expected true or false, got '" + std::string(text) +
                    "'");
}

void check_choice(std::string_view key, std::string_view value,
                  std::initializer_list<std::string_view> choices) {
  std::string listed;
  for (std::string_view c : choices) {
    if (c == value) return;
    listed += listed.empty() ? "" : "|";
    listed += c;
  }
  throw ConfigError(std::string(key) + ": expected " + listed + ", got '" + std::string(value) +
                    "'");
}

constexpr std::string_view kRatioKeys[] = {"medium.v2_over_v1", "medium.v2_over_v3"};
constexpr std::string_view kPhysicalKeys[] = {"medium.v1_m_per_s", "medium.v2_m_per_s",
                                              "medium.v3_m_per_s", "medium.d_nm"};

}  // namespace

const std::vector<KeySpec>& known_keys() {
  static const std::vector<KeySpec> keys = {
      {"medium.v2_over_v1", ValueKind::real, "2", "velocity ratio v2/v1"},
      {"medium.v2_over_v3", ValueKind::real, "2", "velocity ratio v2/v3"},
      {"medium.v1_m_per_s", ValueKind::real, "", "physical v1 (m/s)"},
      {"medium.v2_m_per_s", ValueKind::real, "", "physical v2 (m/s)"},
      {"medium.v3_m_per_s", ValueKind::real, "", "physical v3 (m/s)"},
      {"medium.d_nm", ValueKind::real, "", "physical spacer width (nm)"},
      {"packet.x_i", ValueKind::real, "-5", "initial packet center, units of d"},
      {"packet.sigma_x", ValueKind::real, "0.2", "packet width, units of d"},
      {"packet.omega0", ValueKind::real, "3.141592653589793", "carrier, units of v2/d"},
      {"packet.k_par", ValueKind::real, "0", "parallel wave number, units of 1/d"},
      {"packet.rho", ValueKind::real, "0", "in-plane coordinate along k_par, units of d"},
      {"packet.amplitude", ValueKind::real, "1", "field amplitude C"},
      {"packet.layer1_part", ValueKind::text, "full", "full|incident|reflected"},
      {"grid.x_min", ValueKind::real, "1", "units of d"},
      {"grid.x_max", ValueKind::real, "2", "units of d"},
      {"grid.x_steps", ValueKind::integer, "100", "number of x samples"},
      {"grid.t_min", ValueKind::real, "5", "units of d/v2"},
      {"grid.t_max", ValueKind::real, "20", "units of d/v2"},
      {"grid.t_steps", ValueKind::integer, "150", "number of t samples"},
      {"scan.omega_min", ValueKind::real, "0.1", "units of v2/d"},
      {"scan.omega_max", ValueKind::real, "10", "units of v2/d"},
      {"scan.steps", ValueKind::integer, "1000", "number of frequencies"},
      {"scan.k_par", ValueKind::real, "0", "units of 1/d"},
      {"propagator.x", ValueKind::real, "2", "receiver, units of d"},
      {"propagator.x_prime", ValueKind::real, "-1", "source, units of d"},
      {"propagator.tau_min", ValueKind::real, "-8", "units of d/v2"},
      {"propagator.tau_max", ValueKind::real, "8", "units of d/v2"},
      {"propagator.tau_steps", ValueKind::integer, "161", "number of tau samples"},
      {"propagator.k_par", ValueKind::real, "0", "units of 1/d"},
      {"propagator.time_resolution", ValueKind::real, "0.005", "Gaussian smoothing, d/v2"},
      {"quadrature.tol", ValueKind::real, "1e-10", "absolute error target"},
      {"quadrature.truncation_widths", ValueKind::real, "7.5", "envelope cut, in widths"},
      {"quadrature.max_refinements", ValueKind::integer, "3", "panel density doublings"},
      {"quadrature.kernel", ValueKind::text, "auto", "auto|scalar|avx2"},
      {"quadrature.weight", ValueKind::text, "plain", "plain|omega"},
      {"output.plot", ValueKind::boolean, "true", "emit a gnuplot script"},
      {"verify.points", ValueKind::integer, "1000", "random points per suite"},
      {"verify.seed", ValueKind::integer, "20260101", "random seed"},
  };
  return keys;
}

RunConfig::RunConfig() {
  for (const KeySpec& k : known_keys()) {
    if (!k.fallback.empty()) values_[std::string(k.name)] = std::string(k.fallback);
  }
}

void RunConfig::set(std::string_view key, std::string_view value) {
  const KeySpec* spec = find_key(key);
  if (spec == nullptr) throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  switch (spec->kind) {
    case ValueKind::real: parse_real(key, value); break;
    case ValueKind::integer: parse_integer(key, value); break;
    case ValueKind::boolean: parse_boolean(key, value); break;
    case ValueKind::text:
      if (key == "packet.layer1_part") check_choice(key, value, {"full", "incident", "reflected"});
      if (key == "quadrature.kernel") check_choice(key, value, {"auto", "scalar", "avx2"});
      if (key == "quadrature.weight") check_choice(key, value, {"plain", "omega"});
      break;
  }
  values_[std::string(key)] = std::string(value);
  explicit_[std::string(key)] = true;
}

bool RunConfig::explicitly_set(std::string_view key) const {
  return explicit_.find(key) != explicit_.end();
}

RunConfig RunConfig::parse(std::string_view text) {
  std::vector<std::string_view> lines;
  bool echo = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    if (line.starts_with(kEchoPrefix)) echo = true;
    lines.push_back(line);
    pos = end + 1;
  }

  RunConfig cfg;
  std::size_t number = 0;
  for (std::string_view line : lines) {
    ++number;
    if (echo) {
      if (!line.starts_with(kEchoPrefix)) continue;
      line = line.substr(kEchoPrefix.size());
    } else if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(number) + ": expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (cfg.explicitly_set(key)) {
      throw ConfigError("line " + std::to_string(number) + ": duplicate key '" +
                        std::string(key) + "'");
    }
    cfg.set(key, value);
  }
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

double RunConfig::real(std::string_view key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing value for '" + std::string(key) + "'");
  return parse_real(key, it->second);
}

std::int64_t RunConfig::integer(std::string_view key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing value for '" + std::string(key) + "'");
  return parse_integer(key, it->second);
}

const std::string& RunConfig::text(std::string_view key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing value for '" + std::string(key) + "'");
  return it->second;
}

bool RunConfig::boolean(std::string_view key) const { return parse_boolean(key, text(key)); }

bool RunConfig::uses_physical_medium() const {
  bool any_physical = false;
  for (std::string_view k : kPhysicalKeys) any_physical = any_physical || explicitly_set(k);
  if (!any_physical) return false;
  for (std::string_view k : kRatioKeys) {
    if (explicitly_set(k)) return false;
  }
  for (std::string_view k : kPhysicalKeys) {
    if (!explicitly_set(k)) {
      throw ConfigError("physical medium needs " + std::string(k) + " as well");
    }
  }
  return true;
}

TrilayerMedium RunConfig::medium() const {
  try {
    if (uses_physical_medium()) {
      return TrilayerMedium(real("medium.v1_m_per_s"), real("medium.v2_m_per_s"),
                            real("medium.v3_m_per_s"), real("medium.d_nm") * 1e-9);
    }
    const double r1 = real("medium.v2_over_v1");
    const double r3 = real("medium.v2_over_v3");
    if (!(r1 > 0.0 && r3 > 0.0)) throw ConfigError("velocity ratios must be > 0");
    return TrilayerMedium(1.0 / r1, 1.0, 1.0 / r3, 1.0);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("medium: ") + e.what());
  }
}

IncidentPacket RunConfig::packet() const {
  const TrilayerMedium m = medium();
  const ScaleSystem scale(m);
  const double d = scale.length_unit();
  try {
    return IncidentPacket::from_carrier(m, real("packet.omega0") * scale.omega_d(),
                                        real("packet.x_i") * d, real("packet.sigma_x") * d,
                                        real("packet.k_par") / d, real("packet.amplitude"));
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("packet: ") + e.what());
  }
}

FieldOptions RunConfig::field_options() const {
  FieldOptions o;
  o.quad.tol = real("quadrature.tol");
  o.quad.truncation_widths = real("quadrature.truncation_widths");
  o.quad.max_refinements = static_cast<int>(integer("quadrature.max_refinements"));
  o.quad.kernel = simd::parse_kernel_choice(text("quadrature.kernel"));
  o.weight = text("quadrature.weight") == "omega" ? SpectralWeight::omega : SpectralWeight::plain;
  const std::string& part = text("packet.layer1_part");
  o.part = part == "incident" ? Layer1Part::incident
                              : (part == "reflected" ? Layer1Part::reflected : Layer1Part::full);
  return o;
}

PropagatorOptions RunConfig::propagator_options() const {
  PropagatorOptions o;
  o.time_resolution = real("propagator.time_resolution");
  o.tol = real("quadrature.tol");
  o.truncation_widths = real("quadrature.truncation_widths");
  o.max_refinements = static_cast<int>(integer("quadrature.max_refinements"));
  o.kernel = simd::parse_kernel_choice(text("quadrature.kernel"));
  return o;
}

void RunConfig::validate() const {
  medium();
  packet();
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
  };
  require(integer("grid.x_steps") >= 2, "grid.x_steps must be >= 2");
  require(integer("grid.t_steps") >= 2, "grid.t_steps must be >= 2");
  require(real("grid.x_min") < real("grid.x_max"), "grid.x_min must be < grid.x_max");
  require(real("grid.t_min") < real("grid.t_max"), "grid.t_min must be < grid.t_max");
  require(integer("scan.steps") >= 2, "scan.steps must be >= 2");
  require(real("scan.omega_min") > 0.0, "scan.omega_min must be > 0");
  require(real("scan.omega_min") < real("scan.omega_max"),
          "scan.omega_min must be < scan.omega_max");
  require(real("scan.k_par") >= 0.0, "scan.k_par must be >= 0");
  require(integer("propagator.tau_steps") >= 2, "propagator.tau_steps must be >= 2");
  require(real("propagator.tau_min") < real("propagator.tau_max"),
          "propagator.tau_min must be < propagator.tau_max");
  require(real("propagator.k_par") >= 0.0, "propagator.k_par must be >= 0");
  require(real("propagator.time_resolution") > 0.0, "propagator.time_resolution must be > 0");
  require(real("quadrature.tol") > 0.0, "quadrature.tol must be > 0");
  require(real("quadrature.truncation_widths") > 0.0, "quadrature.truncation_widths must be > 0");
  require(integer("quadrature.max_refinements") >= 0, "quadrature.max_refinements must be >= 0");
  require(integer("verify.points") >= 1, "verify.points must be >= 1");
  if (text("packet.layer1_part") != "full" && real("grid.x_max") >= 0.0) {
    throw ConfigError("packet.layer1_part = " + text("packet.layer1_part") +
                      " is only defined for x < 0; x range [" +
                      format_double(std::max(0.0, real("grid.x_min"))) + ", " +
                      format_double(real("grid.x_max")) + "] is unsupported");
  }
  try {
    simd::resolve_kernel(simd::parse_kernel_choice(text("quadrature.kernel")));
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("quadrature.kernel: ") + e.what());
  }
}

std::vector<std::string> RunConfig::warnings() const {
  std::vector<std::string> out;
  bool ratio = false;
  bool physical = false;
  for (std::string_view k : kRatioKeys) ratio = ratio || explicitly_set(k);
  for (std::string_view k : kPhysicalKeys) physical = physical || explicitly_set(k);
  if (ratio && physical) {
    out.emplace_back("both velocity ratios and physical medium keys given; using the ratios");
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  const bool physical = uses_physical_medium();
  std::vector<std::pair<std::string, std::string>> out;
  for (const KeySpec& k : known_keys()) {
    const bool is_ratio = k.name == kRatioKeys[0] || k.name == kRatioKeys[1];
    const bool is_physical = k.name.starts_with("medium.") && !is_ratio;
    if ((physical && is_ratio) || (!physical && is_physical)) continue;
    std::string value;
    switch (k.kind) {
      case ValueKind::real: value = format_double(real(k.name)); break;
      case ValueKind::integer: value = std::to_string(integer(k.name)); break;
      case ValueKind::boolean: value = boolean(k.name) ? "true" : "false"; break;
      case ValueKind::text: value = text(k.name); break;
    }
    out.emplace_back(std::string(k.name), value);
  }
  return out;
}

}  // namespace trilayer::cli
