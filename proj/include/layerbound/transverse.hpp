#pragma once

// The one-dimensional transverse eigenvalue problem
//
//   lambda1(k1, k2) = inf  int |psi'|^2 w / int |psi|^2 w,
//   w(u) = (1 - k1 u)(1 - k2 u),  psi in W_0^{1,2}((-a, a)),
//
// solved in its weighted form (P1 finite elements) and in the equivalent
// Schroedinger form -phi'' + V phi = lambda phi (finite differences).

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "layerbound/tridiag.hpp"

namespace layerbound {

/// Half the layer thickness.
class HalfWidth {
 public:
  explicit HalfWidth(double a);
  double value() const noexcept { return a_; }

 private:
  double a_;
};

/// Constant curvatures entering the transverse problem, in 1/length.
/// Valid for a half-width a when |k1 a| <= 1 and |k2 a| <= 1.
struct CurvaturePair {
  double kappa1 = 0.0;
  double kappa2 = 0.0;
};

/// Uniform partition of [-a, a] with n interior nodes.
class GridSpec {
 public:
  explicit GridSpec(int interior_nodes);
  int interior() const noexcept { return n_; }
  double spacing(HalfWidth a) const noexcept { return 2.0 * a.value() / (n_ + 1); }
  /// All n + 2 nodes; the endpoints are exactly -a and a and the node set is
  /// exactly symmetric under u -> -u.
  std::vector<double> nodes(HalfWidth a) const;

 private:
  int n_;
};

enum class Method { weighted_fe, potential_fd };
const char* method_name(Method m) noexcept;

/// How the weighted solver treats an endpoint where the weight vanishes.
///
/// A vanishing weight makes the Dirichlet trace invisible to the weighted
/// energy, so the infimum over W_0^{1,2} equals the one over functions free
/// at that end. `natural_where_degenerate` discretizes that infimum and
/// converges at O(h^2); `dirichlet` pins the node anyway and yields upper
/// bounds that approach the infimum only logarithmically.
enum class EndpointCondition { natural_where_degenerate, dirichlet };

struct EigenResult {
  double lambda1 = 0.0;
  std::vector<double> nodes;        ///< grid the eigenvector lives on
  std::vector<double> eigenvector;  ///< values at all nodes, 0 at pinned ends
  Method method = Method::weighted_fe;
  int n = 0;                        ///< interior nodes of the finest grid
  double error_estimate = 0.0;
  bool extrapolated = false;
  int degenerate_endpoints = 0;     ///< endpoints where the weight vanishes
  std::optional<bool> decreasing;   ///< set when no extrapolation is claimed
  std::vector<double> sequence;     ///< raw values at n, 2n+1 (and 4n+3 when extrapolated)
  std::optional<double> cross_method_discrepancy;
};

/// Piecewise-linear function on a (possibly nonuniform) grid of [-a, a],
/// vanishing at both endpoints.
struct TestFunction {
  std::vector<double> nodes;
  std::vector<double> values;

  /// Validates: at least 3 strictly increasing nodes, matching sizes,
  /// endpoint values exactly zero.
  static TestFunction from_samples(std::vector<double> nodes, std::vector<double> values);
  /// Samples f on the uniform grid; the endpoint values are set to zero.
  static TestFunction sample(const std::function<double(double)>& f, HalfWidth a,
                             const GridSpec& grid);
};

struct SolverOptions {
  int n = 2000;
  bool cross_check = true;
  EndpointCondition endpoints = EndpointCondition::natural_where_degenerate;
};

/// (1 - k1 u)(1 - k2 u). Throws InputError for |u| > a.
double weight_at(double u, const CurvaturePair& pair, HalfWidth a);

/// -(k1 - k2)^2 / (4 (1 - k1 u)^2 (1 - k2 u)^2). Throws SingularityError where
/// a factor 1 - k u vanishes.
double potential_at(double u, const CurvaturePair& pair);

/// The same potential as -(1 / (4 u^2)) [1/(1 - k1 u) - 1/(1 - k2 u)]^2, u != 0.
double potential_at_factored(double u, const CurvaturePair& pair);

/// Throws InputError unless |k1 a| <= 1 and |k2 a| <= 1.
void validate_pair(const CurvaturePair& pair, HalfWidth a);

/// Number of endpoints of [-a, a] at which the weight vanishes (0, 1 or 2).
int degenerate_endpoint_count(const CurvaturePair& pair, HalfWidth a);

EigenResult lambda1_weighted(const CurvaturePair& pair, HalfWidth a, const GridSpec& grid,
                             EndpointCondition endpoints = EndpointCondition::natural_where_degenerate);

/// Requires |k_i a| <= 0.99: the potential blows up at the endpoints as
/// |k_i a| -> 1.
EigenResult lambda1_potential(const CurvaturePair& pair, HalfWidth a, const GridSpec& grid);

/// Weighted solve at n and 2n + 1 with h^2 Richardson extrapolation, the error
/// estimated against the extrapolation from 2n + 1 and 4n + 3. Plus a
/// potential-form cross-check inside the 0.99/a box. No extrapolation when a
/// degenerate endpoint breaks the h^2 assumption (both ends degenerate, or any
/// degenerate end pinned by EndpointCondition::dirichlet).
///
/// Throws InconsistencyError when the two forms disagree by more than 100
/// times their combined error estimates.
EigenResult lambda1(const CurvaturePair& pair, HalfWidth a, const SolverOptions& opts = {});

/// (int |psi'|^2 w) / (int |psi|^2 w) for the piecewise-linear psi, with the
/// weight integrated exactly per element. Same kernel as the solver, so the
/// quotient of a discrete eigenvector reproduces its eigenvalue.
double rayleigh_quotient_weighted(const TestFunction& psi, const CurvaturePair& pair, HalfWidth a);

/// Three-branch profile: 1 for |u| <= a - eps, -log[(a - |u|)/eps^2]/log(eps)
/// up to |u| = a - eps^2, 0 beyond.
double psi_epsilon_value(double u, double eps, HalfWidth a);

/// psi_epsilon on a composite grid: the uniform nodes of `grid` inside
/// |u| < a - eps, geometrically graded nodes (layer_nodes_per_decade per
/// decade of a - |u|) across the logarithmic layer with both break radii
/// a - eps and a - eps^2 as exact nodes, and the endpoints.
TestFunction psi_epsilon_profile(double eps, HalfWidth a, const GridSpec& grid,
                                 int layer_nodes_per_decade = 64);

}  // namespace layerbound
