#pragma once

#include <stdexcept>
#include <string>

namespace layerbound {

/// Bad arguments: out-of-range curvatures, coarse grids, malformed files.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Iterative method failed to converge or produced an inconsistent result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation at a point where a weight factor (1 - kappa u) vanishes.
class SingularityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Weighted and potential solvers disagree beyond their error estimates.
class InconsistencyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Chart is not an immersion at a sampled point (EG - F^2 <= 0).
class ImmersionError : public std::runtime_error {
 public:
  ImmersionError(const std::string& what, double p, double q)
      : std::runtime_error(what), p_(p), q_(q) {}
  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }

 private:
  double p_;
  double q_;
};

}  // namespace layerbound
