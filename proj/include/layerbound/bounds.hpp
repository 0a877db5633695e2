#pragma once

// The layer lower bound min{lambda1(k1+, k2-), lambda1(k1-, k2+)}, the
// disk floor for non-negatively curved surfaces, and numerical checks of the
// inequalities behind them.

#include <array>
#include <optional>
#include <span>
#include <stdexcept>

#include "layerbound/geometry.hpp"
#include "layerbound/transverse.hpp"

namespace layerbound {

/// The layer condition a * max|k_i| < 1 failed.
class HypothesisError : public std::runtime_error {
 public:
  HypothesisError(const std::string& what, LayerDiagnostic diagnostic)
      : std::runtime_error(what), diagnostic_(diagnostic) {}
  const LayerDiagnostic& diagnostic() const noexcept { return diagnostic_; }

 private:
  LayerDiagnostic diagnostic_;
};

enum class Branch { k1_plus_k2_minus, k1_minus_k2_plus };
const char* branch_name(Branch b) noexcept;

struct BoundReport {
  double lower_bound = 0.0;
  Branch branch = Branch::k1_plus_k2_minus;
  std::array<CurvaturePair, 2> branch_pairs{};
  std::array<double, 2> lambda_branch_values{};
  /// Disk floor j01^2/(2a)^2, present when the sampled Gauss curvature has one
  /// sign (k1_minus >= 0 or k2_plus <= 0).
  std::optional<double> floor;
  LayerDiagnostic hypothesis;
  double solver_error = 0.0;  ///< max of the branch error estimates
};

/// Throws HypothesisError when check_layer_hypothesis fails.
BoundReport theorem1_bound(const CurvatureSummary& summary, HalfWidth a,
                           const SolverOptions& opts = {});

/// First positive zero of J0, bisected on [2, 3] to full double precision.
double bessel_j0_first_zero();

/// j01^2 / (2a)^2: lowest Dirichlet eigenvalue of the disk of radius 2a.
double faber_krahn_floor(HalfWidth a);

struct HardyWeights {
  double optimal;    ///< a^2 / (a^2 - u^2)^2
  double classical;  ///< 1 / (4 (a - |u|)^2)
};

/// Throws InputError for |u| >= a.
HardyWeights hardy_weights_at(double u, HalfWidth a);

struct HardyResidual {
  double kinetic = 0.0;    ///< int |phi'|^2
  double poincare = 0.0;   ///< lambda1 int |phi|^2
  double hardy = 0.0;      ///< int |V| |phi|^2
  double residual = 0.0;   ///< kinetic - poincare - hardy
  double lambda1 = 0.0;
  bool refined = false;    ///< the composite grid was split once
};

/// Left and right sides of int |phi'|^2 >= lambda1 int |phi|^2 + int |V| |phi|^2
/// for the piecewise-linear phi. The first two integrals are exact per
/// element; the potential term uses 8-point Gauss-Legendre per element.
/// lambda1 comes from transverse::lambda1 with `opts`.
HardyResidual verify_hardy_inequality(const TestFunction& phi, const CurvaturePair& pair,
                                      HalfWidth a, const SolverOptions& opts = {});

/// Same, with lambda1 already known.
HardyResidual verify_hardy_inequality(const TestFunction& phi, const CurvaturePair& pair,
                                      HalfWidth a, double lambda1);

/// min over u of V(u; k1, k2) - min{V(u; k1+, k2-), V(u; k1-, k2+)}.
/// Throws SingularityError if any of the three pairs is singular on u_grid.
double potential_min_slack(double k1, double k2, const CurvatureSummary& extrema,
                           std::span<const double> u_grid);

/// True iff the slack above is >= -1e-12. Requires k1 in [k1-, k1+] and
/// k2 in [k2-, k2+] (InputError otherwise).
bool potential_min_inequality_check(double k1, double k2, const CurvatureSummary& extrema,
                                    std::span<const double> u_grid);

}  // namespace layerbound
