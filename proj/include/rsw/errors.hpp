#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsw {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid user input: unknown case, malformed config, bad resolution list.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Failure of the numerical method at run time.
class NumericalError : public Error {
public:
  using Error::Error;
};

class UnknownCase : public ConfigError {
public:
  using ConfigError::ConfigError;
};

class IndivisibleDims : public ConfigError {
public:
  using ConfigError::ConfigError;
};

class GridMismatch : public Error {
public:
  using Error::Error;
};

class EmptyEnsemble : public Error {
public:
  using Error::Error;
};

class EmptyList : public Error {
public:
  using Error::Error;
};

class NonpositiveError : public Error {
public:
  using Error::Error;
};

class PositivityFailure : public NumericalError {
public:
  PositivityFailure(const std::string& what, std::vector<std::size_t> cells)
      : NumericalError(what), cells_(std::move(cells)) {}
  const std::vector<std::size_t>& cells() const { return cells_; }

private:
  std::vector<std::size_t> cells_;
};

class NonConvergence : public NumericalError {
public:
  NonConvergence(const std::string& what, double residual, int iterations)
      : NumericalError(what), residual_(residual), iterations_(iterations) {}
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

private:
  double residual_;
  int iterations_;
};

class DominanceViolation : public NumericalError {
public:
  DominanceViolation(const std::string& what, double margin)
      : NumericalError(what), margin_(margin) {}
  double margin() const { return margin_; }

private:
  double margin_;
};

class NonpositiveDt : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class EnergyIncrease : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class BracketViolation : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// Flux-form height update disagrees with the height recovered from phi.
class MismatchBeyondTolerance : public NumericalError {
public:
  using NumericalError::NumericalError;
};

} // namespace rsw
