#pragma once

// Reference surfaces, their shape operator, and the curvature extrema that
// feed the layer bound.

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <functional>
#include <map>
#include <string>

namespace layerbound {

class HalfWidth;

/// Chart value with first and second partial derivatives.
struct ChartDerivatives {
  Eigen::Vector3d r, r_p, r_q, r_pp, r_pq, r_qq;
};

struct ParameterDomain {
  double p0 = 0.0, p1 = 1.0;
  double q0 = 0.0, q1 = 1.0;
  bool periodic_p = false;
  bool periodic_q = false;
};

/// A chart (p, q) -> R^3 with unit normal orientation * (r_p x r_q)/|r_p x r_q|.
/// Without analytic derivatives, partials come from central differences with
/// step 1e-5 times the domain span on each axis.
struct ParametricSurface {
  std::string name;
  std::function<Eigen::Vector3d(double, double)> chart;
  std::function<ChartDerivatives(double, double)> derivatives;  // optional
  ParameterDomain domain;
  int orientation = 1;

  /// Same surface with the opposite normal.
  ParametricSurface flipped() const;
};

/// First (E, F, G) and second (L, M, N) fundamental form coefficients.
struct FundamentalForms {
  double E = 1.0, F = 0.0, G = 1.0;
  double L = 0.0, M = 0.0, N = 0.0;

  double mean_curvature() const;
  double gauss_curvature() const;
};

/// Sorted principal curvatures, k1 <= k2.
struct PrincipalCurvaturePair {
  double k1 = 0.0;
  double k2 = 0.0;
};

struct SampleResolution {
  int p = 256;
  int q = 256;
};

/// Extrema of the sorted principal curvatures over a sampled surface:
/// k_i^+ = sup k_i, k_i^- = inf k_i.
struct CurvatureSummary {
  double k1_plus = 0.0, k1_minus = 0.0;
  double k2_plus = 0.0, k2_minus = 0.0;
  double max_abs = 0.0;
  SampleResolution resolution{};

  /// Summary of the same surface with the normal reversed:
  /// k1'^{+-} = -k2^{-+}, k2'^{+-} = -k1^{-+}.
  CurvatureSummary flipped() const;
};

/// a * max|k_i| < 1 check. Never throws.
struct LayerDiagnostic {
  bool pass = false;
  double product = 0.0;  ///< a * max_abs
  double margin = 0.0;   ///< 1 - product
};

ChartDerivatives chart_derivatives(const ParametricSurface& surface, double p, double q);

/// Forms from precomputed partials at parameter point (p, q). Throws
/// ImmersionError where EG - F^2 is not positive.
FundamentalForms forms_from_derivatives(const ChartDerivatives& d, int orientation, double p,
                                        double q, const std::string& name = "chart");

/// Throws ImmersionError where EG - F^2 is not positive.
FundamentalForms fundamental_forms_at(const ParametricSurface& surface, double p, double q);

/// Eigenvalues of the Weingarten map relative to the metric. Throws
/// NumericalError when H^2 - K is clearly negative.
PrincipalCurvaturePair principal_curvatures_at(const FundamentalForms& forms);

/// Principal curvatures on a resolution.p x resolution.q parameter grid.
/// Periodic axes are sampled without repeating the endpoint; other axes
/// include both ends. Requires at least 16 samples per axis.
CurvatureSummary curvature_summary(const ParametricSurface& surface, SampleResolution resolution);

/// Extrema from a list of pointwise pairs (used by sampled charts).
CurvatureSummary summarize(const std::vector<PrincipalCurvaturePair>& samples,
                           SampleResolution resolution);

LayerDiagnostic check_layer_hypothesis(const CurvatureSummary& summary, HalfWidth a);

namespace surfaces {

ParametricSurface plane(double extent = 1.0);
/// Polar caps of angular size 1e-3 are excluded (the chart degenerates there).
ParametricSurface sphere(double radius);
ParametricSurface cylinder(double radius, double half_length = 1.0);
/// Tube radius `minor` about a circle of radius `major`.
ParametricSurface torus(double major, double minor);
ParametricSurface catenoid(double c, double half_height = 2.0);
/// z = c (x^2 + y^2) on [-extent, extent]^2.
ParametricSurface paraboloid(double c, double extent = 1.0);

/// Catalog lookup: "plane", "sphere" {R}, "cylinder" {R, half_length},
/// "torus" {R, r}, "catenoid" {c, half_height}, "paraboloid" {c, extent}.
/// Throws InputError for unknown names or missing parameters.
ParametricSurface by_name(const std::string& name, const std::map<std::string, double>& params);

}  // namespace surfaces
}  // namespace layerbound
