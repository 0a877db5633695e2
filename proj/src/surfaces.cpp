#include <cmath>
#include <numbers>

#include "layerbound/error.hpp"
#include "layerbound/geometry.hpp"

namespace layerbound::surfaces {
namespace {

using Eigen::Vector3d;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPolarMargin = 1e-3;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InputError(std::string(what) + " must be positive");
}

}  // namespace

ParametricSurface plane(double extent) {
  require_positive(extent, "plane extent");
  ParametricSurface s;
  s.name = "plane";
  s.chart = [](double p, double q) { return Vector3d(p, q, 0.0); };
  s.derivatives = [](double p, double q) {
    ChartDerivatives d;
    d.r = Vector3d(p, q, 0.0);
    d.r_p = Vector3d::UnitX();
    d.r_q = Vector3d::UnitY();
    d.r_pp = d.r_pq = d.r_qq = Vector3d::Zero();
    return d;
  };
  s.domain = {-extent, extent, -extent, extent, false, false};
  return s;
}

// p = azimuth, q = polar angle. r_p x r_q points inward, so curvatures are +1/R.
ParametricSurface sphere(double radius) {
  require_positive(radius, "sphere radius");
  const double R = radius;
  ParametricSurface s;
  s.name = "sphere";
  s.chart = [R](double p, double q) {
    return Vector3d(R * std::sin(q) * std::cos(p), R * std::sin(q) * std::sin(p), R * std::cos(q));
  };
  s.derivatives = [R](double p, double q) {
    const double sp = std::sin(p), cp = std::cos(p), sq = std::sin(q), cq = std::cos(q);
    ChartDerivatives d;
    d.r = R * Vector3d(sq * cp, sq * sp, cq);
    d.r_p = R * Vector3d(-sq * sp, sq * cp, 0.0);
    d.r_q = R * Vector3d(cq * cp, cq * sp, -sq);
    d.r_pp = R * Vector3d(-sq * cp, -sq * sp, 0.0);
    d.r_pq = R * Vector3d(-cq * sp, cq * cp, 0.0);
    d.r_qq = R * Vector3d(-sq * cp, -sq * sp, -cq);
    return d;
  };
  s.domain = {0.0, kTwoPi, kPolarMargin, std::numbers::pi - kPolarMargin, true, false};
  return s;
}

// p = angle, q = axial coordinate; r_p x r_q points outward, hence orientation -1.
ParametricSurface cylinder(double radius, double half_length) {
  require_positive(radius, "cylinder radius");
  require_positive(half_length, "cylinder half_length");
  const double R = radius;
  ParametricSurface s;
  s.name = "cylinder";
  s.chart = [R](double p, double q) { return Vector3d(R * std::cos(p), R * std::sin(p), q); };
  s.derivatives = [R](double p, double q) {
    const double sp = std::sin(p), cp = std::cos(p);
    ChartDerivatives d;
    d.r = Vector3d(R * cp, R * sp, q);
    d.r_p = Vector3d(-R * sp, R * cp, 0.0);
    d.r_q = Vector3d::UnitZ();
    d.r_pp = Vector3d(-R * cp, -R * sp, 0.0);
    d.r_pq = d.r_qq = Vector3d::Zero();
    return d;
  };
  s.domain = {0.0, kTwoPi, -half_length, half_length, true, false};
  s.orientation = -1;
  return s;
}

// p = tube angle (0 on the outer equator), q = azimuth. Normal points to the
// core circle: k = 1/minor across the tube, cos p / (major + minor cos p) along it.
ParametricSurface torus(double major, double minor) {
  require_positive(major, "torus major radius");
  require_positive(minor, "torus minor radius");
  if (!(minor < major)) throw InputError("torus needs minor < major");
  const double R = major, r = minor;
  ParametricSurface s;
  s.name = "torus";
  s.chart = [R, r](double p, double q) {
    const double rho = R + r * std::cos(p);
    return Vector3d(rho * std::cos(q), rho * std::sin(q), r * std::sin(p));
  };
  s.derivatives = [R, r](double p, double q) {
    const double sp = std::sin(p), cp = std::cos(p), sq = std::sin(q), cq = std::cos(q);
    const double rho = R + r * cp;
    ChartDerivatives d;
    d.r = Vector3d(rho * cq, rho * sq, r * sp);
    d.r_p = Vector3d(-r * sp * cq, -r * sp * sq, r * cp);
    d.r_q = Vector3d(-rho * sq, rho * cq, 0.0);
    d.r_pp = Vector3d(-r * cp * cq, -r * cp * sq, -r * sp);
    d.r_pq = Vector3d(r * sp * sq, -r * sp * cq, 0.0);
    d.r_qq = Vector3d(-rho * cq, -rho * sq, 0.0);
    return d;
  };
  s.domain = {0.0, kTwoPi, 0.0, kTwoPi, true, true};
  return s;
}

// Minimal surface, k = -+1 / (c cosh^2(v/c)).
ParametricSurface catenoid(double c, double half_height) {
  require_positive(c, "catenoid parameter c");
  require_positive(half_height, "catenoid half_height");
  ParametricSurface s;
  s.name = "catenoid";
  s.chart = [c](double p, double q) {
    const double ch = std::cosh(q / c);
    return Vector3d(c * ch * std::cos(p), c * ch * std::sin(p), q);
  };
  s.derivatives = [c](double p, double q) {
    const double sp = std::sin(p), cp = std::cos(p);
    const double ch = std::cosh(q / c), sh = std::sinh(q / c);
    ChartDerivatives d;
    d.r = Vector3d(c * ch * cp, c * ch * sp, q);
    d.r_p = Vector3d(-c * ch * sp, c * ch * cp, 0.0);
    d.r_q = Vector3d(sh * cp, sh * sp, 1.0);
    d.r_pp = Vector3d(-c * ch * cp, -c * ch * sp, 0.0);
    d.r_pq = Vector3d(-sh * sp, sh * cp, 0.0);
    d.r_qq = Vector3d(ch / c * cp, ch / c * sp, 0.0);
    return d;
  };
  s.domain = {0.0, kTwoPi, -half_height, half_height, true, false};
  return s;
}

ParametricSurface paraboloid(double c, double extent) {
  require_positive(c, "paraboloid parameter c");
  require_positive(extent, "paraboloid extent");
  ParametricSurface s;
  s.name = "paraboloid";
  s.chart = [c](double p, double q) { return Vector3d(p, q, c * (p * p + q * q)); };
  s.derivatives = [c](double p, double q) {
    ChartDerivatives d;
    d.r = Vector3d(p, q, c * (p * p + q * q));
    d.r_p = Vector3d(1.0, 0.0, 2.0 * c * p);
    d.r_q = Vector3d(0.0, 1.0, 2.0 * c * q);
    d.r_pp = Vector3d(0.0, 0.0, 2.0 * c);
    d.r_pq = Vector3d::Zero();
    d.r_qq = Vector3d(0.0, 0.0, 2.0 * c);
    return d;
  };
  s.domain = {-extent, extent, -extent, extent, false, false};
  return s;
}

ParametricSurface by_name(const std::string& name, const std::map<std::string, double>& params) {
  auto get = [&](const char* key) {
    const auto it = params.find(key);
    if (it == params.end()) throw InputError("surface '" + name + "' needs parameter '" + key + "'");
    return it->second;
  };
  auto get_or = [&](const char* key, double fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  if (name == "plane") return plane(get_or("extent", 1.0));
  if (name == "sphere") return sphere(get("R"));
  if (name == "cylinder") return cylinder(get("R"), get_or("half_length", 1.0));
  if (name == "torus") return torus(get("R"), get("r"));
  if (name == "catenoid") return catenoid(get("c"), get_or("half_height", 2.0));
  if (name == "paraboloid") return paraboloid(get("c"), get_or("extent", 1.0));
  throw InputError("unknown surface '" + name + "'");
}

}  // namespace layerbound::surfaces
