#pragma once

// Flat key = value run configuration with section prefixes (medium.*,
// packet.*, grid.*, scan.*, propagator.*, quadrature.*, output.*, verify.*).

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "trilayer/errors.hpp"
#include "trilayer/field_grid.hpp"
#include "trilayer/media.hpp"
#include "trilayer/packet.hpp"

namespace trilayer::cli {

class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class ValueKind { real, integer, text, boolean };

struct KeySpec {
  std::string_view name;
  ValueKind kind;
  std::string_view fallback;  ///< empty: no default
  std::string_view help;
};

/// Every key the configuration accepts, in echo order.
const std::vector<KeySpec>& known_keys();

class RunConfig {
 public:
  /// Defaults only.
  RunConfig();

  /// Parses "key = value" lines. '#' starts a comment. If the text holds
  /// "# config: key = value" lines (an output file echo) only those are read.
  static RunConfig parse(std::string_view text);
  static RunConfig load(const std::string& path);

  /// Throws ConfigError for unknown keys or malformed values.
  void set(std::string_view key, std::string_view value);
  bool explicitly_set(std::string_view key) const;

  double real(std::string_view key) const;
  std::int64_t integer(std::string_view key) const;
  const std::string& text(std::string_view key) const;
  bool boolean(std::string_view key) const;

  /// Physical velocities and width when all of medium.v*_m_per_s and
  /// medium.d_nm are given and no ratio key is; otherwise (v1, v2, v3, d) =
  /// (1/r1, 1, 1/r3, 1) with r1 = v2/v1, r3 = v2/v3.
  TrilayerMedium medium() const;
  bool uses_physical_medium() const;
  IncidentPacket packet() const;
  FieldOptions field_options() const;
  PropagatorOptions propagator_options() const;

  /// Cross-key checks (grid sizes, ranges, media invariants). Throws ConfigError.
  void validate() const;
  /// Non-fatal diagnostics produced while resolving, e.g. ratio precedence.
  std::vector<std::string> warnings() const;

  /// Resolved key/value pairs that determine the output, in known_keys order.
  std::vector<std::pair<std::string, std::string>> echo() const;

 private:
  std::map<std::string, std::string, std::less<>> values_;
  std::map<std::string, bool, std::less<>> explicit_;
};

}  // namespace trilayer::cli
