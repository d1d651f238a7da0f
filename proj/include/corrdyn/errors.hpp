#pragma once

#include <stdexcept>
#include <string>

namespace corrdyn {

/// Base class for every error raised by the library. Each error carries a
/// stable machine-readable code (e.g. "state.unphysical") used by the CLI.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Malformed input: wrong shapes, bad configuration, parse failures.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A well-formed computation that failed for numerical or physical reasons.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InputError {
 public:
  explicit DimensionMismatch(const std::string& what)
      : InputError("dimension.mismatch", what) {}
};

class InvalidDimension : public InputError {
 public:
  explicit InvalidDimension(const std::string& what)
      : InputError("dimension.invalid", what) {}
};

class ConfigError : public InputError {
 public:
  ConfigError(std::string code, const std::string& what)
      : InputError(std::move(code), what) {}
};

class NotHermitian : public NumericalError {
 public:
  explicit NotHermitian(double deviation)
      : NumericalError("matrix.not_hermitian",
                       "matrix is not Hermitian (max |m - m^H| = " +
                           std::to_string(deviation) + ")"),
        deviation_(deviation) {}
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

class NotUnitary : public NumericalError {
 public:
  explicit NotUnitary(double deviation)
      : NumericalError("matrix.not_unitary",
                       "matrix is not unitary (max |U^H U - I| = " +
                           std::to_string(deviation) + ")"),
        deviation_(deviation) {}
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

/// Raised when a candidate density operator fails trace or positivity checks.
class UnphysicalState : public NumericalError {
 public:
  UnphysicalState(double min_eigenvalue, const std::string& what)
      : NumericalError("state.unphysical", what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// The reduced propagator cannot be inverted at `time`.
class SingularPropagator : public NumericalError {
 public:
  SingularPropagator(double time, double condition_number)
      : NumericalError("propagator.singular",
                       "reduced propagator is singular at t = " + std::to_string(time)),
        time_(time),
        condition_number_(condition_number) {}
  double time() const noexcept { return time_; }
  double condition_number() const noexcept { return condition_number_; }

 private:
  double time_;
  double condition_number_;
};

/// A preparation map has no physical joint state for the given input.
class OutsideDomain : public NumericalError {
 public:
  OutsideDomain(double min_eigenvalue, const std::string& what)
      : NumericalError("prep.outside_domain", what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

class UnphysicalInitialState : public NumericalError {
 public:
  explicit UnphysicalInitialState(const std::string& what)
      : NumericalError("state.inconsistent_correlations", what) {}
};

}  // namespace corrdyn
