#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace aledg {

/// Base for every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A state violates rho > 0 or p > 0.
struct InvalidStateError : Error {
  using Error::Error;
};

/// Pressure recovered from a conserved state is not positive.
struct NegativePressureError : InvalidStateError {
  NegativePressureError(const std::string& what, std::vector<double> state)
      : InvalidStateError(what), state(std::move(state)) {}
  std::vector<double> state;
};

/// The two rarefactions of a Riemann problem separate and leave vacuum.
struct VacuumError : Error {
  using Error::Error;
};

struct CapabilityError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  ConfigError(const std::string& key, const std::string& what)
      : Error(key.empty() ? what : key + ": " + what), key(key) {}
  std::string key;
};

struct LookupError : Error {
  using Error::Error;
};

/// Mesh vertices crossed during a move.
struct TanglingError : Error {
  using Error::Error;
};

struct DegenerateCellError : Error {
  DegenerateCellError(const std::string& what, int cell) : Error(what), cell(cell) {}
  int cell;
};

/// Interpolation regions do not tile the remeshed patch.
struct DecompositionError : Error {
  using Error::Error;
};

/// Fatal failure of a time step; carries the offending cell.
struct StepError : Error {
  StepError(const std::string& what, int cell) : Error(what), cell(cell) {}
  int cell;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace aledg
