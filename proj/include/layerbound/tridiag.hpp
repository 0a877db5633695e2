#pragma once

#include <cstddef>
#include <vector>

namespace layerbound {

/// Symmetric tridiagonal matrix stored by diagonal and first off-diagonal.
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;  // off.size() == diag.size() - 1

  std::size_t size() const noexcept { return diag.size(); }
  static SymTridiagonal identity(std::size_t n);
};

struct GeneralizedEigenpair {
  double value = 0.0;
  std::vector<double> vector;  ///< M-normalized, first nonzero entry positive
  int iterations = 0;
};

struct InverseIterationOptions {
  double relative_tolerance = 1e-13;
  int max_iterations = 10000;
};

/// Smallest eigenvalue of the pencil K x = lambda M x for symmetric
/// tridiagonal K and symmetric positive definite tridiagonal M.
///
/// Shifted inverse iteration from the all-ones vector with shift 0, the shift
/// then tracking the Rayleigh quotient. Convergence is declared when the
/// eigenvalue change falls below the relative tolerance or below the rounding
/// level of the quotient itself. A Sturm count of K - (lambda - delta) M then
/// confirms no eigenvalue lies below; otherwise the run is repeated with the
/// shift frozen at 0 until the lowest mode dominates.
///
/// Throws InputError on mismatched sizes or indefinite M, NumericalError when
/// the iteration cap is reached.
GeneralizedEigenpair smallest_generalized_eigenpair(
    const SymTridiagonal& K, const SymTridiagonal& M,
    const InverseIterationOptions& options = {});

/// Number of eigenvalues of the pencil (K, M) strictly below sigma (Sylvester
/// inertia of K - sigma M via the LDL^T pivots). M must be positive definite.
std::size_t count_eigenvalues_below(const SymTridiagonal& K,
                                    const SymTridiagonal& M, double sigma);

}  // namespace layerbound
