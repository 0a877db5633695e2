#include "layerbound/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "layerbound/error.hpp"
#include "layerbound/transverse.hpp"

namespace layerbound {
namespace {

constexpr double kFdRelativeStep = 1e-5;

ChartDerivatives finite_differences(const ParametricSurface& s, double p, double q) {
  const double hp = (s.domain.p1 - s.domain.p0) * kFdRelativeStep;
  const double hq = (s.domain.q1 - s.domain.q0) * kFdRelativeStep;
  const auto& f = s.chart;
  ChartDerivatives d;
  d.r = f(p, q);
  const Eigen::Vector3d pp = f(p + hp, q), pm = f(p - hp, q);
  const Eigen::Vector3d qp = f(p, q + hq), qm = f(p, q - hq);
  d.r_p = (pp - pm) / (2.0 * hp);
  d.r_q = (qp - qm) / (2.0 * hq);
  d.r_pp = (pp - 2.0 * d.r + pm) / (hp * hp);
  d.r_qq = (qp - 2.0 * d.r + qm) / (hq * hq);
  d.r_pq = (f(p + hp, q + hq) - f(p + hp, q - hq) - f(p - hp, q + hq) + f(p - hp, q - hq)) /
           (4.0 * hp * hq);
  return d;
}

std::vector<double> axis_samples(double lo, double hi, bool periodic, int count) {
  std::vector<double> x(static_cast<std::size_t>(count));
  const double span = hi - lo;
  for (int i = 0; i < count; ++i) {
    const double t = periodic ? static_cast<double>(i) / count : static_cast<double>(i) / (count - 1);
    x[static_cast<std::size_t>(i)] = lo + span * t;
  }
  if (!periodic) x.back() = hi;
  return x;
}

}  // namespace

ParametricSurface ParametricSurface::flipped() const {
  ParametricSurface s = *this;
  s.orientation = -orientation;
  return s;
}

double FundamentalForms::mean_curvature() const {
  return (E * N - 2.0 * F * M + G * L) / (2.0 * (E * G - F * F));
}

double FundamentalForms::gauss_curvature() const { return (L * N - M * M) / (E * G - F * F); }

CurvatureSummary CurvatureSummary::flipped() const {
  CurvatureSummary s = *this;
  s.k1_plus = -k2_minus;
  s.k1_minus = -k2_plus;
  s.k2_plus = -k1_minus;
  s.k2_minus = -k1_plus;
  return s;
}

ChartDerivatives chart_derivatives(const ParametricSurface& surface, double p, double q) {
  if (surface.derivatives) return surface.derivatives(p, q);
  return finite_differences(surface, p, q);
}

FundamentalForms forms_from_derivatives(const ChartDerivatives& d, int orientation, double p,
                                        double q, const std::string& name) {
  FundamentalForms f;
  f.E = d.r_p.dot(d.r_p);
  f.F = d.r_p.dot(d.r_q);
  f.G = d.r_q.dot(d.r_q);
  const double det = f.E * f.G - f.F * f.F;
  const Eigen::Vector3d cross = d.r_p.cross(d.r_q);
  const double cross_norm = cross.norm();
  if (!(det > 1e-14 * f.E * f.G) || !(cross_norm > 0.0) || !std::isfinite(det)) {
    std::ostringstream os;
    os << "chart '" << name << "' is not an immersion at (p, q) = (" << p << ", " << q
       << "): EG - F^2 = " << det;
    throw ImmersionError(os.str(), p, q);
  }
  const Eigen::Vector3d normal = (orientation >= 0 ? 1.0 : -1.0) * cross / cross_norm;
  f.L = d.r_pp.dot(normal);
  f.M = d.r_pq.dot(normal);
  f.N = d.r_qq.dot(normal);
  return f;
}

FundamentalForms fundamental_forms_at(const ParametricSurface& surface, double p, double q) {
  return forms_from_derivatives(chart_derivatives(surface, p, q), surface.orientation, p, q,
                                surface.name);
}

PrincipalCurvaturePair principal_curvatures_at(const FundamentalForms& forms) {
  // Weingarten matrix S = I^{-1} II. Its discriminant ((s11 - s22)/2)^2 +
  // s12 s21 equals H^2 - K without the cancellation of that difference.
  const auto& f = forms;
  const double det = f.E * f.G - f.F * f.F;
  const double s11 = (f.G * f.L - f.F * f.M) / det;
  const double s12 = (f.G * f.M - f.F * f.N) / det;
  const double s21 = (f.E * f.M - f.F * f.L) / det;
  const double s22 = (f.E * f.N - f.F * f.M) / det;
  const double H = 0.5 * (s11 + s22);
  const double half_gap = 0.5 * (s11 - s22);
  double radicand = half_gap * half_gap + s12 * s21;
  if (radicand < 0.0) {
    if (radicand < -1e-12 * std::max(1.0, H * H))
      throw NumericalError("shape operator has complex eigenvalues (H^2 - K < 0)");
    radicand = 0.0;
  }
  const double root = std::sqrt(radicand);
  return {H - root, H + root};
}

CurvatureSummary summarize(const std::vector<PrincipalCurvaturePair>& samples,
                           SampleResolution resolution) {
  if (samples.empty()) throw InputError("no curvature samples");
  CurvatureSummary s;
  s.resolution = resolution;
  s.k1_plus = s.k2_plus = -std::numeric_limits<double>::infinity();
  s.k1_minus = s.k2_minus = std::numeric_limits<double>::infinity();
  for (const auto& k : samples) {
    s.k1_plus = std::max(s.k1_plus, k.k1);
    s.k1_minus = std::min(s.k1_minus, k.k1);
    s.k2_plus = std::max(s.k2_plus, k.k2);
    s.k2_minus = std::min(s.k2_minus, k.k2);
  }
  s.max_abs = std::max({std::abs(s.k1_minus), std::abs(s.k1_plus), std::abs(s.k2_minus),
                        std::abs(s.k2_plus)});
  return s;
}

CurvatureSummary curvature_summary(const ParametricSurface& surface, SampleResolution resolution) {
  if (resolution.p < 16 || resolution.q < 16)
    throw InputError("curvature sampling needs at least 16 points per axis");
  const ParameterDomain& d = surface.domain;
  const std::vector<double> ps = axis_samples(d.p0, d.p1, d.periodic_p, resolution.p);
  const std::vector<double> qs = axis_samples(d.q0, d.q1, d.periodic_q, resolution.q);
  std::vector<PrincipalCurvaturePair> samples;
  samples.reserve(ps.size() * qs.size());
  for (const double p : ps)
    for (const double q : qs) samples.push_back(principal_curvatures_at(fundamental_forms_at(surface, p, q)));
  return summarize(samples, resolution);
}

LayerDiagnostic check_layer_hypothesis(const CurvatureSummary& summary, HalfWidth a) {
  LayerDiagnostic diag;
  diag.product = a.value() * summary.max_abs;
  diag.margin = 1.0 - diag.product;
  diag.pass = diag.product < 1.0;
  return diag;
}

}  // namespace layerbound
