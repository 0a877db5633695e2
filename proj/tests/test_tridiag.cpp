#include <doctest.h>

#include <cmath>
#include <numbers>

#include "layerbound/error.hpp"
#include "layerbound/tridiag.hpp"

using namespace layerbound;

namespace {

// P1 stiffness and mass on (-a, a) with n interior nodes.
void flat_pencil(int n, double a, SymTridiagonal& K, SymTridiagonal& M) {
  const double h = 2.0 * a / (n + 1);
  K = {std::vector<double>(n, 2.0 / h), std::vector<double>(n - 1, -1.0 / h)};
  M = {std::vector<double>(n, 4.0 * h / 6.0), std::vector<double>(n - 1, h / 6.0)};
}

}  // namespace

TEST_CASE("identity pencil has eigenvalue one") {
  const auto I = SymTridiagonal::identity(7);
  const GeneralizedEigenpair e = smallest_generalized_eigenpair(I, I);
  CHECK(e.value == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("flat Laplacian pencil approaches pi^2 / (2a)^2") {
  SymTridiagonal K, M;
  const double a = 1.5;
  flat_pencil(2000, a, K, M);
  const GeneralizedEigenpair e = smallest_generalized_eigenpair(K, M);
  const double exact = std::numbers::pi * std::numbers::pi / (4.0 * a * a);
  CHECK(e.value == doctest::Approx(exact).epsilon(1e-6));
  CHECK(e.value > exact);  // Galerkin upper bound
  // Sign convention and M-normalization.
  CHECK(e.vector.front() > 0.0);
  double norm = 0.0;
  for (std::size_t i = 0; i < e.vector.size(); ++i) {
    norm += M.diag[i] * e.vector[i] * e.vector[i];
    if (i + 1 < e.vector.size()) norm += 2.0 * M.off[i] * e.vector[i] * e.vector[i + 1];
  }
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("smallest eigenvalue is found even when a start vector favours another mode") {
  // Diagonal pencil with the smallest value last and tiny off-diagonals.
  SymTridiagonal K{{5.0, 4.0, 3.0, 2.0, 1.0}, {0.0, 0.0, 0.0, 0.0}};
  const auto I = SymTridiagonal::identity(5);
  CHECK(smallest_generalized_eigenpair(K, I).value == doctest::Approx(1.0));
}

TEST_CASE("Sturm count of the discrete flat Laplacian") {
  // Closed-form discrete eigenvalues of tridiag(-1, 2, -1).
  const int n = 50;
  SymTridiagonal K{std::vector<double>(n, 2.0), std::vector<double>(n - 1, -1.0)};
  const auto I = SymTridiagonal::identity(n);
  auto mu = [&](int j) { return 2.0 - 2.0 * std::cos(j * std::numbers::pi / (n + 1)); };
  CHECK(count_eigenvalues_below(K, I, 0.5 * (mu(3) + mu(4))) == 3);
  CHECK(count_eigenvalues_below(K, I, 0.0) == 0);
  CHECK(count_eigenvalues_below(K, I, 4.5) == static_cast<std::size_t>(n));
}

TEST_CASE("input validation") {
  const auto I3 = SymTridiagonal::identity(3);
  const auto I4 = SymTridiagonal::identity(4);
  CHECK_THROWS_AS(smallest_generalized_eigenpair(I3, I4), InputError);
  SymTridiagonal bad{{1.0, -1.0, 1.0}, {0.0, 0.0}};
  CHECK_THROWS_AS(smallest_generalized_eigenpair(I3, bad), InputError);
}

TEST_CASE("iteration cap raises a numerical error") {
  // Two nearly equal lowest eigenvalues and a one-step cap.
  SymTridiagonal K{{1.0, 1.0 + 1e-9, 3.0}, {1e-3, 0.0}};
  InverseIterationOptions opts;
  opts.max_iterations = 1;
  CHECK_THROWS_AS(smallest_generalized_eigenpair(K, SymTridiagonal::identity(3), opts),
                  NumericalError);
}
