#include "layerbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "layerbound/error.hpp"
#include "layerbound/kernels.hpp"
#include "layerbound/oracles.hpp"

namespace layerbound {
namespace {

constexpr double kPotentialSlack = 1e-12;

// 8-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 4> kGaussX = {0.1834346424956498049394761, 0.5255324099163289858177390,
                                           0.7966664774136267395915539, 0.9602898564975362316835609};
constexpr std::array<double, 4> kGaussW = {0.3626837833783619829651504, 0.3137066458778872873379622,
                                           0.2223810344533744705443560, 0.1012285362903762591525314};

double potential_term(const std::vector<double>& x, const std::vector<double>& v,
                      const CurvaturePair& pair) {
  double total = 0.0;
  for (std::size_t e = 0; e + 1 < x.size(); ++e) {
    const double h = x[e + 1] - x[e];
    const double mid = 0.5 * (x[e] + x[e + 1]);
    double sum = 0.0;
    for (std::size_t g = 0; g < kGaussX.size(); ++g) {
      for (const double side : {-1.0, 1.0}) {
        const double u = mid + side * kGaussX[g] * 0.5 * h;
        const double t = (u - x[e]) / h;
        const double phi = (1.0 - t) * v[e] + t * v[e + 1];
        const double f1 = 1.0 - pair.kappa1 * u;
        const double f2 = 1.0 - pair.kappa2 * u;
        const double d = pair.kappa1 - pair.kappa2;
        const double absv = 0.25 * d * d / ((f1 * f1) * (f2 * f2));
        sum += kGaussW[g] * absv * phi * phi;
      }
    }
    total += 0.5 * h * sum;
  }
  return total;
}

// Splits every element in two.
TestFunction refine(const TestFunction& phi) {
  TestFunction out;
  for (std::size_t e = 0; e + 1 < phi.nodes.size(); ++e) {
    out.nodes.push_back(phi.nodes[e]);
    out.values.push_back(phi.values[e]);
    out.nodes.push_back(0.5 * (phi.nodes[e] + phi.nodes[e + 1]));
    out.values.push_back(0.5 * (phi.values[e] + phi.values[e + 1]));
  }
  out.nodes.push_back(phi.nodes.back());
  out.values.push_back(phi.values.back());
  return out;
}

void check_singular(const CurvaturePair& pair, std::span<const double> u_grid) {
  for (const double u : u_grid) {
    if (1.0 - pair.kappa1 * u == 0.0 || 1.0 - pair.kappa2 * u == 0.0) {
      std::ostringstream os;
      os.precision(17);
      os << "potential for (" << pair.kappa1 << ", " << pair.kappa2 << ") is singular at u = " << u;
      throw SingularityError(os.str());
    }
  }
}

}  // namespace

const char* branch_name(Branch b) noexcept {
  return b == Branch::k1_plus_k2_minus ? "k1_plus,k2_minus" : "k1_minus,k2_plus";
}

BoundReport theorem1_bound(const CurvatureSummary& summary, HalfWidth a, const SolverOptions& opts) {
  BoundReport report;
  report.hypothesis = check_layer_hypothesis(summary, a);
  if (!report.hypothesis.pass) {
    std::ostringstream os;
    os.precision(17);
    os << "layer hypothesis a * max|k| < 1 fails: a * max|k| = " << report.hypothesis.product;
    throw HypothesisError(os.str(), report.hypothesis);
  }
  report.branch_pairs = {CurvaturePair{summary.k1_plus, summary.k2_minus},
                         CurvaturePair{summary.k1_minus, summary.k2_plus}};
  for (std::size_t b = 0; b < 2; ++b) {
    const EigenResult r = lambda1(report.branch_pairs[b], a, opts);
    report.lambda_branch_values[b] = r.lambda1;
    report.solver_error = std::max(report.solver_error, r.error_estimate);
  }
  const bool second = report.lambda_branch_values[1] < report.lambda_branch_values[0];
  report.branch = second ? Branch::k1_minus_k2_plus : Branch::k1_plus_k2_minus;
  report.lower_bound = report.lambda_branch_values[second ? 1 : 0];
  if (summary.k1_minus >= 0.0 || summary.k2_plus <= 0.0) report.floor = faber_krahn_floor(a);
  return report;
}

double bessel_j0_first_zero() {
  static const double root = [] {
    double lo = 2.0, hi = 3.0;  // J0(2) > 0 > J0(3)
    while (true) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (oracles::bessel_j0(mid) > 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return std::abs(oracles::bessel_j0(lo)) <= std::abs(oracles::bessel_j0(hi)) ? lo : hi;
  }();
  return root;
}

double faber_krahn_floor(HalfWidth a) {
  const double j = bessel_j0_first_zero();
  const double d = 2.0 * a.value();
  return (j * j) / (d * d);
}

HardyWeights hardy_weights_at(double u, HalfWidth a) {
  const double av = a.value();
  if (!(std::abs(u) < av)) throw InputError("Hardy weights need |u| < a");
  const double gap = av - std::abs(u);
  const double q = (av - u) * (av + u);
  return {av * av / (q * q), 1.0 / (4.0 * gap * gap)};
}

HardyResidual verify_hardy_inequality(const TestFunction& phi, const CurvaturePair& pair,
                                      HalfWidth a, const SolverOptions& opts) {
  return verify_hardy_inequality(phi, pair, a, lambda1(pair, a, opts).lambda1);
}

HardyResidual verify_hardy_inequality(const TestFunction& phi, const CurvaturePair& pair,
                                      HalfWidth a, double lambda1) {
  validate_pair(pair, a);
  const TestFunction checked = TestFunction::from_samples(phi.nodes, phi.values);
  if (checked.nodes.front() != -a.value() || checked.nodes.back() != a.value())
    throw InputError("test function grid must span [-a, a] exactly");

  HardyResidual out;
  out.lambda1 = lambda1;
  const std::vector<double>& x = checked.nodes;
  const std::vector<double>& v = checked.values;
  double l2 = 0.0;
  for (std::size_t e = 0; e + 1 < x.size(); ++e) {
    const double h = x[e + 1] - x[e];
    const double d = v[e + 1] - v[e];
    out.kinetic += d * d / h;
    l2 += h / 3.0 * (v[e] * v[e] + v[e] * v[e + 1] + v[e + 1] * v[e + 1]);
  }
  if (!(l2 > 0.0)) throw InputError("test function is identically zero");
  out.poincare = lambda1 * l2;
  out.hardy = potential_term(x, v, pair);
  if (!std::isfinite(out.hardy)) {
    const TestFunction fine = refine(checked);
    out.hardy = potential_term(fine.nodes, fine.values, pair);
    out.refined = true;
    if (!std::isfinite(out.hardy))
      throw NumericalError("potential quadrature is not finite even after refinement");
  }
  out.residual = out.kinetic - out.poincare - out.hardy;
  return out;
}

double potential_min_slack(double k1, double k2, const CurvatureSummary& extrema,
                           std::span<const double> u_grid) {
  if (u_grid.empty()) throw InputError("empty u grid");
  const CurvaturePair pairs[] = {{k1, k2},
                                 {extrema.k1_plus, extrema.k2_minus},
                                 {extrema.k1_minus, extrema.k2_plus}};
  for (const auto& p : pairs) check_singular(p, u_grid);
  double scale = 0.0;
  for (const double u : u_grid) scale = std::max(scale, std::abs(u));
  const double slack = kernels::potential_min_slack(u_grid, k1, k2, extrema.k1_plus, extrema.k2_minus,
                                                    extrema.k1_minus, extrema.k2_plus, 1e-6 * scale);
  if (std::isnan(slack)) throw SingularityError("potential evaluation produced NaN");
  return slack;
}

bool potential_min_inequality_check(double k1, double k2, const CurvatureSummary& extrema,
                                    std::span<const double> u_grid) {
  if (k1 < extrema.k1_minus || k1 > extrema.k1_plus || k2 < extrema.k2_minus || k2 > extrema.k2_plus)
    throw InputError("curvatures outside the extrema box");
  return potential_min_slack(k1, k2, extrema, u_grid) >= -kPotentialSlack;
}

}  // namespace layerbound
