#pragma once

#include <stdexcept>
#include <string>

namespace asianlns {

/// Rejected user input (bad market parameters, degree out of range, ...).
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A computation that failed for numerical reasons. `module()` names the
/// component that produced it (model, basis, pricer, mc).
class NumericalError : public std::runtime_error {
public:
  NumericalError(std::string module, const std::string& what)
      : std::runtime_error(module + ": " + what), module_(std::move(module)) {}

  const std::string& module() const noexcept { return module_; }

private:
  std::string module_;
};

class MomentOverflow : public NumericalError {
public:
  explicit MomentOverflow(const std::string& what) : NumericalError("model", what) {}
};

/// Cholesky factorization hit a non-positive pivot.
class CholeskyBreakdown : public NumericalError {
public:
  explicit CholeskyBreakdown(int pivot)
      : NumericalError("basis", "Cholesky breakdown at pivot " + std::to_string(pivot)),
        pivot_(pivot) {}

  int pivot() const noexcept { return pivot_; }

private:
  int pivot_;
};

/// nu^2 <= sigma^2 T / 2: the likelihood ratio is not square integrable
/// under the weight, so its norm is infinite.
class NonIntegrableLikelihood : public InvalidArgument {
public:
  using InvalidArgument::InvalidArgument;
};

} // namespace asianlns
