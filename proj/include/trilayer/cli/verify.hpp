#pragma once

// Invariant suites behind `verify`. Each suite takes the functions under
// test through VerifyHooks so a harness can inject faults.

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "trilayer/packet.hpp"
#include "trilayer/step_scattering.hpp"
#include "trilayer/trilayer_green.hpp"

namespace trilayer::cli {

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::size_t checked = 0;
  double tolerance = 0.0;
  double worst = 0.0;  ///< largest deviation seen, in the suite's metric
  std::string worst_input;
};

struct VerifyHooks {
  std::function<cplx(double, double, const TrilayerMedium&, const SpectralPoint&)> green =
      green_retarded;
  std::function<AmplitudeSet(const TrilayerMedium&, const SpectralPoint&)> amplitudes =
      amplitude_set;
  std::function<cplx(const StepContext&, Channel, int)> series = t_matrix_series;
  std::function<FieldSample(double, double, const TrilayerMedium&, const IncidentPacket&,
                            const FieldOptions&)>
      packet_field = packet_field_normal;
  std::function<std::pair<double, double>(double, double, const TrilayerMedium&, double, double)>
      plane_wave = plane_wave_limit;
  std::function<double(double, double, double, const TrilayerMedium&, double,
                       const PropagatorOptions&)>
      propagator = propagator_g;
};

struct VerifySettings {
  std::size_t points = 1000;
  std::uint64_t seed = 20260101;
  FieldOptions field{};
  PropagatorOptions propagator{};
};

SuiteResult verify_unitarity(const VerifySettings& s, const VerifyHooks& h = {});
SuiteResult verify_reciprocity(const VerifySettings& s, const VerifyHooks& h = {});
SuiteResult verify_dual_path(const VerifySettings& s, const VerifyHooks& h = {});
SuiteResult verify_tmatrix_series(const VerifySettings& s, const VerifyHooks& h = {});
SuiteResult verify_homogeneous_packet(const VerifySettings& s, const VerifyHooks& h = {});
SuiteResult verify_plane_wave(const VerifySettings& s, const VerifyHooks& h = {});
SuiteResult verify_packet_plane_wave(const VerifySettings& s, const VerifyHooks& h = {});
/// Values against the closed form, then antisymmetry in tau.
std::vector<SuiteResult> verify_free_propagator(const VerifySettings& s,
                                                const VerifyHooks& h = {});

struct VerifyReport {
  std::uint64_t seed = 0;
  std::size_t points = 0;
  std::vector<SuiteResult> suites;

  bool passed() const;
  std::string to_json() const;
};

VerifyReport run_verification(const VerifySettings& s, const VerifyHooks& h = {});

}  // namespace trilayer::cli
