#include "layerbound/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace layerbound::kernels::scalar {
namespace {

// Local quadratic expansion w(x0 + h t) = c0 + c1 t + c2 t^2. The constant
// term keeps the product form so that it stays accurate next to a root.
struct Element {
  double h, c0, c1, c2;
};

inline Element expand(double x0, double x1, double k1, double k2) {
  const double h = x1 - x0;
  const double f1 = 1.0 - k1 * x0;
  const double f2 = 1.0 - k2 * x0;
  const double c0 = f1 * f2;
  const double c1 = h * (-(k1 * f2) - k2 * f1);
  const double c2 = (k1 * k2) * (h * h);
  return {h, c0, c1, c2};
}

inline double potential(double u, double k1, double k2) {
  const double d = k1 - k2;
  const double f1 = 1.0 - k1 * u;
  const double f2 = 1.0 - k2 * u;
  return -(0.25 * (d * d)) / ((f1 * f1) * (f2 * f2));
}

inline double potential_factored(double u, double k1, double k2) {
  const double g = 1.0 / (1.0 - k1 * u) - 1.0 / (1.0 - k2 * u);
  return -(g * g) / ((4.0 * u) * u);
}

}  // namespace

void element_integrals(std::span<const double> nodes, double k1, double k2,
                       const ElementIntegrals& out) {
  const std::size_t elements = out.stiffness.size();
  for (std::size_t e = 0; e < elements; ++e) {
    const auto [h, c0, c1, c2] = expand(nodes[e], nodes[e + 1], k1, k2);
    const double integral = h * ((c0 + c1 / 2.0) + c2 / 3.0);
    out.stiffness[e] = integral / (h * h);
    out.mass_ll[e] = h * ((c0 / 3.0 + c1 / 12.0) + c2 / 30.0);
    out.mass_lr[e] = h * ((c0 / 6.0 + c1 / 12.0) + c2 / 20.0);
    out.mass_rr[e] = h * ((c0 / 3.0 + c1 / 4.0) + c2 / 5.0);
  }
}

QuotientParts weighted_quotient_parts(std::span<const double> nodes,
                                      std::span<const double> values,
                                      double k1, double k2) {
  QuotientParts parts;
  for (std::size_t e = 0; e + 1 < nodes.size(); ++e) {
    const auto [h, c0, c1, c2] = expand(nodes[e], nodes[e + 1], k1, k2);
    const double integral = h * ((c0 + c1 / 2.0) + c2 / 3.0);
    const double mll = h * ((c0 / 3.0 + c1 / 12.0) + c2 / 30.0);
    const double mlr = h * ((c0 / 6.0 + c1 / 12.0) + c2 / 20.0);
    const double mrr = h * ((c0 / 3.0 + c1 / 4.0) + c2 / 5.0);
    const double vl = values[e];
    const double vr = values[e + 1];
    const double dv = vr - vl;
    parts.energy += (integral / (h * h)) * (dv * dv);
    parts.norm += (mll * (vl * vl) + 2.0 * (mlr * (vl * vr))) + mrr * (vr * vr);
  }
  return parts;
}

void potential_values(std::span<const double> u, double k1, double k2,
                      std::span<double> out) {
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = potential(u[i], k1, k2);
}

double potential_min_slack(std::span<const double> u, double k1, double k2,
                           double b1_k1, double b1_k2, double b2_k1,
                           double b2_k2, double small_u) {
  double slack = std::numeric_limits<double>::infinity();
  for (const double x : u) {
    double v, v1, v2;
    if (std::abs(x) < small_u) {
      v = potential(x, k1, k2);
      v1 = potential(x, b1_k1, b1_k2);
      v2 = potential(x, b2_k1, b2_k2);
    } else {
      v = potential_factored(x, k1, k2);
      v1 = potential_factored(x, b1_k1, b1_k2);
      v2 = potential_factored(x, b2_k1, b2_k2);
    }
    slack = std::min(slack, v - std::min(v1, v2));
  }
  return slack;
}

}  // namespace layerbound::kernels::scalar
