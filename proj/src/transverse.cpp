#include "layerbound/transverse.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "layerbound/error.hpp"
#include "layerbound/kernels.hpp"

namespace layerbound {
namespace {

// |k a| may exceed 1 by this much from rounding in callers (k = 1/a).
constexpr double kPairSlack = 1e-12;
// Endpoint weight treated as vanishing below this.
constexpr double kDegenerateWeight = 1e-12;
constexpr double kPotentialBox = 0.99;

std::string describe(const CurvaturePair& pair) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << pair.kappa1 << ", " << pair.kappa2 << ")";
  return os.str();
}

double endpoint_weight(const CurvaturePair& pair, double u) {
  return (1.0 - pair.kappa1 * u) * (1.0 - pair.kappa2 * u);
}

struct Elements {
  std::vector<double> stiffness, mass_ll, mass_lr, mass_rr;

  explicit Elements(std::span<const double> nodes, const CurvaturePair& pair)
      : stiffness(nodes.size() - 1),
        mass_ll(nodes.size() - 1),
        mass_lr(nodes.size() - 1),
        mass_rr(nodes.size() - 1) {
    kernels::element_integrals(nodes, pair.kappa1, pair.kappa2,
                               {stiffness, mass_ll, mass_lr, mass_rr});
  }
};

// Rows first..last (inclusive) of the global P1 pencil.
std::pair<SymTridiagonal, SymTridiagonal> restrict_pencil(const Elements& el, std::size_t first,
                                                          std::size_t last) {
  const std::size_t node_count = el.stiffness.size() + 1;
  const std::size_t size = last - first + 1;
  SymTridiagonal K{std::vector<double>(size), std::vector<double>(size - 1)};
  SymTridiagonal M{std::vector<double>(size), std::vector<double>(size - 1)};
  for (std::size_t r = 0; r < size; ++r) {
    const std::size_t i = first + r;
    double kd = 0.0, md = 0.0;
    if (i > 0) {
      kd += el.stiffness[i - 1];
      md += el.mass_rr[i - 1];
    }
    if (i + 1 < node_count) {
      kd += el.stiffness[i];
      md += el.mass_ll[i];
    }
    K.diag[r] = kd;
    M.diag[r] = md;
    if (r + 1 < size) {
      K.off[r] = -el.stiffness[i];
      M.off[r] = el.mass_lr[i];
    }
  }
  return {std::move(K), std::move(M)};
}

bool inside_potential_box(const CurvaturePair& pair, HalfWidth a) {
  return std::abs(pair.kappa1 * a.value()) <= kPotentialBox &&
         std::abs(pair.kappa2 * a.value()) <= kPotentialBox;
}

}  // namespace

HalfWidth::HalfWidth(double a) : a_(a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw InputError("half-width must be positive and finite");
}

GridSpec::GridSpec(int interior_nodes) : n_(interior_nodes) {
  if (interior_nodes < 3) throw InputError("grid needs at least 3 interior nodes");
}

std::vector<double> GridSpec::nodes(HalfWidth a) const {
  const int intervals = n_ + 1;
  std::vector<double> x(static_cast<std::size_t>(n_) + 2);
  for (int i = 0; i <= intervals; ++i)
    x[static_cast<std::size_t>(i)] = a.value() * (static_cast<double>(2 * i - intervals) / intervals);
  return x;
}

const char* method_name(Method m) noexcept {
  return m == Method::weighted_fe ? "weighted-FE" : "potential-FD";
}

TestFunction TestFunction::from_samples(std::vector<double> nodes, std::vector<double> values) {
  if (nodes.size() < 3) throw InputError("test function needs at least 3 nodes");
  if (nodes.size() != values.size()) throw InputError("test function nodes/values size mismatch");
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    if (!(nodes[i] < nodes[i + 1])) throw InputError("test function nodes must increase strictly");
  if (values.front() != 0.0 || values.back() != 0.0)
    throw InputError("test function must vanish at both endpoints");
  return {std::move(nodes), std::move(values)};
}

TestFunction TestFunction::sample(const std::function<double(double)>& f, HalfWidth a,
                                  const GridSpec& grid) {
  std::vector<double> x = grid.nodes(a);
  std::vector<double> v(x.size());
  for (std::size_t i = 1; i + 1 < x.size(); ++i) v[i] = f(x[i]);
  return from_samples(std::move(x), std::move(v));
}

double weight_at(double u, const CurvaturePair& pair, HalfWidth a) {
  if (!(std::abs(u) <= a.value())) throw InputError("weight evaluated outside [-a, a]");
  return (1.0 - pair.kappa1 * u) * (1.0 - pair.kappa2 * u);
}

double potential_at(double u, const CurvaturePair& pair) {
  const double f1 = 1.0 - pair.kappa1 * u;
  const double f2 = 1.0 - pair.kappa2 * u;
  if (f1 == 0.0 || f2 == 0.0)
    throw SingularityError("potential is singular at u where 1 - kappa u = 0");
  double v = 0.0;
  kernels::potential_values(std::span<const double>(&u, 1), pair.kappa1, pair.kappa2,
                            std::span<double>(&v, 1));
  return v;
}

double potential_at_factored(double u, const CurvaturePair& pair) {
  if (u == 0.0) throw InputError("factored potential is undefined at u = 0");
  const double f1 = 1.0 - pair.kappa1 * u;
  const double f2 = 1.0 - pair.kappa2 * u;
  if (f1 == 0.0 || f2 == 0.0)
    throw SingularityError("potential is singular at u where 1 - kappa u = 0");
  const double g = 1.0 / f1 - 1.0 / f2;
  return -(g * g) / (4.0 * u * u);
}

void validate_pair(const CurvaturePair& pair, HalfWidth a) {
  const double limit = 1.0 + kPairSlack;
  if (!std::isfinite(pair.kappa1) || !std::isfinite(pair.kappa2) ||
      std::abs(pair.kappa1 * a.value()) > limit || std::abs(pair.kappa2 * a.value()) > limit)
    throw InputError("curvature pair " + describe(pair) + " outside [-1/a, 1/a]");
}

int degenerate_endpoint_count(const CurvaturePair& pair, HalfWidth a) {
  return (std::abs(endpoint_weight(pair, -a.value())) <= kDegenerateWeight ? 1 : 0) +
         (std::abs(endpoint_weight(pair, a.value())) <= kDegenerateWeight ? 1 : 0);
}

EigenResult lambda1_weighted(const CurvaturePair& pair, HalfWidth a, const GridSpec& grid,
                             EndpointCondition endpoints) {
  validate_pair(pair, a);
  std::vector<double> nodes = grid.nodes(a);
  const Elements elements(nodes, pair);

  const bool natural = endpoints == EndpointCondition::natural_where_degenerate;
  const bool left_free =
      natural && std::abs(endpoint_weight(pair, -a.value())) <= kDegenerateWeight;
  const bool right_free =
      natural && std::abs(endpoint_weight(pair, a.value())) <= kDegenerateWeight;
  const std::size_t first = left_free ? 0 : 1;
  const std::size_t last = right_free ? nodes.size() - 1 : nodes.size() - 2;

  const auto [K, M] = restrict_pencil(elements, first, last);
  const GeneralizedEigenpair eig = smallest_generalized_eigenpair(K, M);

  EigenResult result;
  result.eigenvector.assign(nodes.size(), 0.0);
  std::copy(eig.vector.begin(), eig.vector.end(),
            result.eigenvector.begin() + static_cast<std::ptrdiff_t>(first));
  const kernels::QuotientParts parts =
      kernels::weighted_quotient_parts(nodes, result.eigenvector, pair.kappa1, pair.kappa2);
  const double scale = 1.0 / std::sqrt(parts.norm);
  for (double& v : result.eigenvector) v *= scale;
  // Recomputed in difference form: no cancellation, and identical to
  // rayleigh_quotient_weighted on the same vector.
  result.lambda1 = rayleigh_quotient_weighted(
      TestFunction{nodes, result.eigenvector}, pair, a);
  result.nodes = std::move(nodes);
  result.method = Method::weighted_fe;
  result.n = grid.interior();
  result.error_estimate = 1e-13 * std::abs(result.lambda1);
  result.degenerate_endpoints = degenerate_endpoint_count(pair, a);
  return result;
}

EigenResult lambda1_potential(const CurvaturePair& pair, HalfWidth a, const GridSpec& grid) {
  validate_pair(pair, a);
  if (!inside_potential_box(pair, a))
    throw InputError("curvature pair " + describe(pair) +
                     " too close to +-1/a for the potential form (needs |kappa a| <= 0.99); "
                     "use lambda1_weighted");
  std::vector<double> nodes = grid.nodes(a);
  const std::size_t n = static_cast<std::size_t>(grid.interior());
  const double h = grid.spacing(a);
  const double inv_h2 = 1.0 / (h * h);

  std::vector<double> v(n);
  kernels::potential_values(std::span<const double>(nodes).subspan(1, n), pair.kappa1,
                            pair.kappa2, v);
  SymTridiagonal K{std::vector<double>(n), std::vector<double>(n - 1, -inv_h2)};
  for (std::size_t i = 0; i < n; ++i) K.diag[i] = 2.0 * inv_h2 + v[i];
  const GeneralizedEigenpair eig = smallest_generalized_eigenpair(K, SymTridiagonal::identity(n));

  EigenResult result;
  result.eigenvector.assign(n + 2, 0.0);
  std::copy(eig.vector.begin(), eig.vector.end(), result.eigenvector.begin() + 1);
  double energy = 0.0, norm = 0.0;
  for (std::size_t i = 0; i + 1 < result.eigenvector.size(); ++i) {
    const double d = result.eigenvector[i + 1] - result.eigenvector[i];
    energy += d * d * inv_h2;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double p = result.eigenvector[i + 1];
    energy += v[i] * p * p;
    norm += p * p;
  }
  result.lambda1 = energy / norm;
  const double scale = 1.0 / std::sqrt(h * norm);
  for (double& x : result.eigenvector) x *= scale;
  result.nodes = std::move(nodes);
  result.method = Method::potential_fd;
  result.n = grid.interior();
  result.error_estimate = 1e-13 * std::abs(result.lambda1);
  return result;
}

namespace {

double richardson(double coarse, double fine) { return fine + (fine - coarse) / 3.0; }

// Rounding level of an eigenvalue from an ill-conditioned (h^-2) pencil.
double roundoff(double lambda) { return 1e-13 * std::abs(lambda); }

}  // namespace

EigenResult lambda1(const CurvaturePair& pair, HalfWidth a, const SolverOptions& opts) {
  validate_pair(pair, a);
  const GridSpec coarse_grid(opts.n);
  const GridSpec fine_grid(2 * opts.n + 1);
  const EigenResult coarse = lambda1_weighted(pair, a, coarse_grid, opts.endpoints);
  EigenResult result = lambda1_weighted(pair, a, fine_grid, opts.endpoints);
  result.sequence = {coarse.lambda1, result.lambda1};

  const int degenerate = result.degenerate_endpoints;
  const bool pinned_degenerate = opts.endpoints == EndpointCondition::dirichlet && degenerate > 0;
  if (degenerate == 2 || pinned_degenerate) {
    result.extrapolated = false;
    result.error_estimate = std::abs(result.lambda1 - coarse.lambda1);
    const double noise = 1e-12 * std::max(1.0, std::abs(coarse.lambda1));
    result.decreasing = pinned_degenerate ? result.lambda1 < coarse.lambda1
                                          : result.lambda1 <= coarse.lambda1 + noise;
  } else {
    // The error of the extrapolated value is estimated against a second
    // extrapolation one level finer (h^4 leading term).
    const GridSpec finest_grid(4 * opts.n + 3);
    const double finest = lambda1_weighted(pair, a, finest_grid, opts.endpoints).lambda1;
    result.sequence.push_back(finest);
    const double fine = result.lambda1;
    result.lambda1 = richardson(coarse.lambda1, fine);
    result.extrapolated = true;
    result.error_estimate =
        16.0 / 15.0 * std::abs(result.lambda1 - richardson(fine, finest)) + roundoff(result.lambda1);
  }

  if (opts.cross_check && inside_potential_box(pair, a)) {
    const double pc = lambda1_potential(pair, a, coarse_grid).lambda1;
    const double pf = lambda1_potential(pair, a, fine_grid).lambda1;
    const double pff = lambda1_potential(pair, a, GridSpec(4 * opts.n + 3)).lambda1;
    const double potential_value = richardson(pc, pf);
    const double p_error =
        16.0 / 15.0 * std::abs(potential_value - richardson(pf, pff)) + roundoff(potential_value);
    const double discrepancy = std::abs(result.lambda1 - potential_value);
    const double combined = result.error_estimate + p_error +
                            1e-12 * std::max(1.0, std::abs(result.lambda1));
    result.cross_method_discrepancy = discrepancy;
    if (discrepancy > 100.0 * combined) {
      std::ostringstream os;
      os.precision(17);
      os << "weighted (" << result.lambda1 << ") and potential (" << potential_value
         << ") forms disagree for pair " << describe(pair) << ": discrepancy " << discrepancy
         << " exceeds 100x combined estimate " << combined;
      throw InconsistencyError(os.str());
    }
  }
  return result;
}

double rayleigh_quotient_weighted(const TestFunction& psi, const CurvaturePair& pair,
                                  HalfWidth a) {
  validate_pair(pair, a);
  if (psi.nodes.size() < 3 || psi.nodes.size() != psi.values.size())
    throw InputError("malformed test function");
  if (psi.nodes.front() != -a.value() || psi.nodes.back() != a.value())
    throw InputError("test function grid must span [-a, a] exactly");
  const kernels::QuotientParts parts =
      kernels::weighted_quotient_parts(psi.nodes, psi.values, pair.kappa1, pair.kappa2);
  if (!(parts.norm > 0.0)) throw InputError("test function has zero weighted norm");
  return parts.energy / parts.norm;
}

double psi_epsilon_value(double u, double eps, HalfWidth a) {
  if (!(eps > 0.0) || !(eps < std::min(1.0, a.value())))
    throw InputError("psi_epsilon needs 0 < eps < min{1, a}");
  const double t = a.value() - std::abs(u);
  const double eps2 = eps * eps;
  if (t >= eps) return 1.0;
  if (t <= eps2) return 0.0;
  return -std::log(t / eps2) / std::log(eps);
}

TestFunction psi_epsilon_profile(double eps, HalfWidth a, const GridSpec& grid,
                                 int layer_nodes_per_decade) {
  if (!(eps > 0.0) || !(eps < std::min(1.0, a.value())))
    throw InputError("psi_epsilon needs 0 < eps < min{1, a}");
  if (layer_nodes_per_decade < 1) throw InputError("layer_nodes_per_decade must be positive");
  const double av = a.value();
  const double eps2 = eps * eps;
  const double h = grid.spacing(a);

  // Distances t = a - |u| of the layer nodes, from eps down to eps^2.
  const int layer = std::max(
      2, static_cast<int>(std::ceil(std::log10(1.0 / eps) * layer_nodes_per_decade)));
  std::vector<double> t(static_cast<std::size_t>(layer) + 1);
  for (int j = 0; j <= layer; ++j)
    t[static_cast<std::size_t>(j)] = eps * std::pow(eps, static_cast<double>(j) / layer);
  t.front() = eps;
  t.back() = eps2;

  // u >= 0 half, increasing. Layer values come from t directly so the break
  // radii carry exactly 1 and 0.
  std::vector<double> right, right_values;
  for (const double x : grid.nodes(a)) {
    if (x >= 0.0 && av - eps - x > 1e-3 * h) {
      right.push_back(x);
      right_values.push_back(1.0);
    }
  }
  for (const double tj : t) {
    right.push_back(av - tj);
    right_values.push_back(tj >= eps ? 1.0 : (tj <= eps2 ? 0.0 : -std::log(tj / eps2) / std::log(eps)));
  }
  right.push_back(av);
  right_values.push_back(0.0);

  std::vector<double> nodes, values;
  nodes.reserve(2 * right.size());
  values.reserve(2 * right.size());
  for (std::size_t i = right.size(); i-- > 0;) {
    if (right[i] == 0.0) continue;
    nodes.push_back(-right[i]);
    values.push_back(right_values[i]);
  }
  nodes.insert(nodes.end(), right.begin(), right.end());
  values.insert(values.end(), right_values.begin(), right_values.end());
  return TestFunction::from_samples(std::move(nodes), std::move(values));
}

}  // namespace layerbound
