#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace isoband {

enum class ErrorKind {
  Structural,
  InvalidMetric,
  DegenerateEllipticity,
  Domain,
  Iteration,
  DegenerateLattice,
  Orientation,
  Inversion,
  Pushforward,
  Aliasing,
  Numerical,
  Io,
  Config,
};

const char* to_string(ErrorKind kind);

/// Base exception for every failure raised by the library. The kind lets
/// callers (and the CLI) branch on the failure class without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when the Beltrami fixed point fails to reach the requested
/// residual; carries the last residual so callers can report it.
class IterationError : public Error {
 public:
  IterationError(const std::string& what, double lastResidual)
      : Error(ErrorKind::Iteration, what), lastResidual_(lastResidual) {}

  double last_residual() const noexcept { return lastResidual_; }

 private:
  double lastResidual_;
};

/// Pipeline failure tagged with the stage that raised it.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause)
      : Error(cause.kind(), stage + ": " + cause.what()), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace isoband
