#include "layerbound/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "layerbound/error.hpp"

namespace layerbound {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Shifted {
  std::vector<double> diag;
  std::vector<double> off;
  double scale = 0.0;  // row-sum norm of |K| + |sigma| |M|, for pivot perturbation
};

Shifted shifted(const SymTridiagonal& K, const SymTridiagonal& M, double sigma) {
  Shifted A;
  const std::size_t n = K.size();
  A.diag.resize(n);
  A.off.resize(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) A.diag[i] = K.diag[i] - sigma * M.diag[i];
  for (std::size_t i = 0; i + 1 < n; ++i) A.off[i] = K.off[i] - sigma * M.off[i];
  const double s = std::abs(sigma);
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(K.diag[i]) + s * std::abs(M.diag[i]);
    if (i > 0) row += std::abs(K.off[i - 1]) + s * std::abs(M.off[i - 1]);
    if (i + 1 < n) row += std::abs(K.off[i]) + s * std::abs(M.off[i]);
    A.scale = std::max(A.scale, row);
  }
  return A;
}

// Gaussian elimination with partial pivoting on a tridiagonal system
// (the LAPACK gtsv scheme). Exactly singular pivots are replaced by
// eps * ||A||; inverse iteration only needs the direction of the solution.
void solve_in_place(Shifted A, std::vector<double>& b) {
  const std::size_t n = A.diag.size();
  if (n == 0) return;
  std::vector<double> dl = A.off;
  std::vector<double> du = A.off;
  std::vector<double>& d = A.diag;
  const double tiny = kEps * std::max(A.scale, std::numeric_limits<double>::min());
  auto guard = [tiny](double& pivot) {
    if (std::abs(pivot) < tiny) pivot = std::copysign(tiny, pivot == 0.0 ? 1.0 : pivot);
  };
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const bool last = i + 2 == n;
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      guard(d[i]);
      const double fact = dl[i] / d[i];
      d[i + 1] -= fact * du[i];
      b[i + 1] -= fact * b[i];
      dl[i] = 0.0;
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      const double temp = d[i + 1];
      d[i + 1] = du[i] - fact * temp;
      if (!last) {
        dl[i] = du[i + 1];
        du[i + 1] = -fact * dl[i];
      } else {
        dl[i] = 0.0;
      }
      du[i] = temp;
      const double tb = b[i];
      b[i] = b[i + 1];
      b[i + 1] = tb - fact * b[i + 1];
    }
  }
  guard(d[n - 1]);
  b[n - 1] /= d[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
  if (n < 3) return;
  for (std::size_t i = n - 2; i-- > 0;)
    b[i] = (b[i] - du[i] * b[i + 1] - dl[i] * b[i + 2]) / d[i];
}

std::vector<double> multiply(const SymTridiagonal& A, const std::vector<double>& x) {
  const std::size_t n = A.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = A.diag[i] * x[i];
    if (i > 0) s += A.off[i - 1] * x[i - 1];
    if (i + 1 < n) s += A.off[i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

// x^T A x together with the sum of absolute terms (rounding scale).
std::pair<double, double> quadratic_form(const SymTridiagonal& A, const std::vector<double>& x) {
  double value = 0.0;
  double magnitude = 0.0;
  for (std::size_t i = 0; i < A.size(); ++i) {
    const double t = A.diag[i] * x[i] * x[i];
    value += t;
    magnitude += std::abs(t);
  }
  for (std::size_t i = 0; i + 1 < A.size(); ++i) {
    const double t = 2.0 * A.off[i] * x[i] * x[i + 1];
    value += t;
    magnitude += std::abs(t);
  }
  return {value, magnitude};
}

struct Rayleigh {
  double value;
  double noise;
};

Rayleigh rayleigh(const SymTridiagonal& K, const SymTridiagonal& M, const std::vector<double>& x) {
  const auto [num, num_mag] = quadratic_form(K, x);
  const auto [den, den_mag] = quadratic_form(M, x);
  const double value = num / den;
  const double noise = 16.0 * kEps * (num_mag + std::abs(value) * den_mag) / den;
  return {value, noise};
}

void normalize(const SymTridiagonal& M, std::vector<double>& x) {
  const double norm = std::sqrt(quadratic_form(M, x).first);
  const auto first = std::find_if(x.begin(), x.end(), [](double v) { return v != 0.0; });
  const double sign = (first != x.end() && *first < 0.0) ? -1.0 : 1.0;
  for (double& v : x) v *= sign / norm;
}

struct Attempt {
  GeneralizedEigenpair pair;
  double noise = 0.0;
  bool converged = false;
};

// freeze_until: keep the shift at 0 until the relative eigenvalue change drops
// below this threshold (0 means track the Rayleigh quotient from step one).
Attempt iterate(const SymTridiagonal& K, const SymTridiagonal& M,
                const InverseIterationOptions& options, double freeze_until) {
  const std::size_t n = K.size();
  Attempt out;
  std::vector<double> x(n, 1.0);
  normalize(M, x);
  double sigma = 0.0;
  double previous = std::numeric_limits<double>::quiet_NaN();
  bool tracking = freeze_until <= 0.0;
  for (int it = 1; it <= options.max_iterations; ++it) {
    std::vector<double> y = multiply(M, x);
    solve_in_place(shifted(K, M, sigma), y);
    if (!std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); }))
      throw NumericalError("inverse iteration produced non-finite iterate at step " +
                           std::to_string(it));
    normalize(M, y);
    x = std::move(y);
    const Rayleigh rq = rayleigh(K, M, x);
    out.pair.iterations = it;
    out.noise = rq.noise;
    out.pair.value = rq.value;
    if (std::isfinite(previous)) {
      const double change = std::abs(rq.value - previous);
      if (change <= std::max(options.relative_tolerance * std::abs(rq.value), rq.noise)) {
        out.converged = tracking;
        if (tracking) break;
      }
      if (!tracking && change <= freeze_until * std::abs(rq.value)) tracking = true;
    }
    previous = rq.value;
    if (tracking) sigma = rq.value;
  }
  out.pair.vector = std::move(x);
  return out;
}

void check_pencil(const SymTridiagonal& K, const SymTridiagonal& M) {
  const std::size_t n = K.size();
  if (n == 0) throw InputError("empty pencil");
  if (M.size() != n || K.off.size() + 1 != n || M.off.size() + 1 != n)
    throw InputError("pencil dimensions do not match");
  // Cholesky pivots of M.
  double pivot = M.diag[0];
  for (std::size_t i = 0;; ++i) {
    if (!(pivot > 0.0))
      throw InputError("mass matrix is not positive definite (pivot " + std::to_string(i) + ")");
    if (i + 1 == n) break;
    pivot = M.diag[i + 1] - M.off[i] * M.off[i] / pivot;
  }
}

}  // namespace

SymTridiagonal SymTridiagonal::identity(std::size_t n) {
  return {std::vector<double>(n, 1.0), std::vector<double>(n > 0 ? n - 1 : 0, 0.0)};
}

std::size_t count_eigenvalues_below(const SymTridiagonal& K, const SymTridiagonal& M,
                                    double sigma) {
  const Shifted A = shifted(K, M, sigma);
  const double tiny = kEps * std::max(A.scale, std::numeric_limits<double>::min());
  std::size_t negatives = 0;
  double d = 0.0;
  for (std::size_t i = 0; i < A.diag.size(); ++i) {
    d = i == 0 ? A.diag[0] : A.diag[i] - A.off[i - 1] * A.off[i - 1] / d;
    if (d == 0.0) d = tiny;
    if (d < 0.0) ++negatives;
  }
  return negatives;
}

GeneralizedEigenpair smallest_generalized_eigenpair(const SymTridiagonal& K,
                                                    const SymTridiagonal& M,
                                                    const InverseIterationOptions& options) {
  check_pencil(K, M);
  for (const double freeze : {0.0, 1e-4, 1e-10}) {
    Attempt attempt = iterate(K, M, options, freeze);
    if (!attempt.converged) {
      throw NumericalError("inverse iteration did not converge in " +
                           std::to_string(options.max_iterations) + " iterations (last value " +
                           std::to_string(attempt.pair.value) + ")");
    }
    const double lambda = attempt.pair.value;
    const double delta = std::max(1e-8 * std::abs(lambda), 4.0 * attempt.noise);
    if (count_eigenvalues_below(K, M, lambda - delta) == 0) return std::move(attempt.pair);
  }
  throw NumericalError("inverse iteration kept converging to an excited mode");
}

}  // namespace layerbound
