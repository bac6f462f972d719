#pragma once

#include <stdexcept>
#include <string>

namespace trilayer {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// k_gt + k_lt == 0: the step amplitudes are undefined.
class DegenerateSpectralPoint : public Error {
 public:
  using Error::Error;
};

/// A perpendicular wave vector vanished (omega == v * k_par) where a
/// Green function needs to divide by it.
class ChannelCutoff : public Error {
 public:
  using Error::Error;
};

/// Resummation denominator (1 - G0 H1, D, or d(omega^2)) is zero.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// The (x, x') pair is not one of the closed-form region pairs.
class UnsupportedRegion : public Error {
 public:
  using Error::Error;
};

/// Probabilities were requested at a point with a complex k_perp.
class EvanescentRegime : public Error {
 public:
  using Error::Error;
};

class NonFiniteIntegrand : public Error {
 public:
  explicit NonFiniteIntegrand(double omega)
      : Error("integrand is not finite at omega = " + std::to_string(omega)),
        omega_(omega) {}
  double omega() const noexcept { return omega_; }

 private:
  double omega_;
};

}  // namespace trilayer
