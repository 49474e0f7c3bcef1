#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lobatto {

/// Argument outside the domain of an operation (theta outside [0,1], k >= 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Internal-node elimination is singular: h*omega >= sqrt(10) makes delta <= 0.
class EliminationError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Newton iteration failed to reach the requested residual.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::size_t iterations, double residual)
      : std::runtime_error(what), iterations_(iterations), residual_(residual) {}

  std::size_t iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  std::size_t iterations_;
  double residual_;
};

class SingularJacobianError : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace lobatto
