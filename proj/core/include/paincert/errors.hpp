#pragma once

#include <stdexcept>
#include <string>

namespace paincert {

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid solver or run configuration (bad bracket, bad accuracy, ...).
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Finite-difference estimate came out with the wrong sign.
class NumericalDegeneracy : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A stored report is malformed: bad JSON, wrong types, missing or unknown
/// fields, unsupported schema version.
class ReportFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The equalisation solver did not converge for one (p, config) cell.
class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(const std::string& what, int p_index, std::string config)
      : std::runtime_error(what), p_index_(p_index), config_(std::move(config)) {}

  int p_index() const noexcept { return p_index_; }
  const std::string& config() const noexcept { return config_; }

 private:
  int p_index_;
  std::string config_;
};

}  // namespace paincert
