#pragma once

// Closed-form and special-function references for the transverse solvers.

namespace layerbound {

class HalfWidth;

namespace oracles {

/// Annulus r_in < |x| < r_out in the plane. The transverse problem for a
/// curvature kappa in (0, 1/a) is the radial part of the Dirichlet Laplacian
/// on the annulus with radii 1/kappa - a and 1/kappa + a.
struct AnnulusSpec {
  double r_in;
  double r_out;
};

double bessel_j0(double x);
double bessel_j1(double x);
/// Throws InputError for x <= 0.
double bessel_y0(double x);
double bessel_y1(double x);

/// Lowest Dirichlet eigenvalue of the annulus. The ground state is radial, so
/// this is the smallest k^2 with J0(k r_in) Y0(k r_out) = J0(k r_out) Y0(k r_in),
/// bracketed on a k-grid from 0.1 pi/(r_out - r_in) and bisected.
double annulus_lowest_eigenvalue(const AnnulusSpec& spec);

/// (j01 / radius)^2.
double disk_lowest_eigenvalue(double radius);

/// Exact value of
///   2 int_0^a |psi_eps'|^2 (1 - u/a) du / int_0^a |psi_eps|^2 (1 - u/a) du,
/// the upper bound for lambda1(-1/a, 1/a) obtained from the logarithmic
/// cut-off psi_eps. Leading order 4 / (a^2 ln(1/eps)).
double psi_epsilon_quotient_closed_form(double eps, HalfWidth a);

}  // namespace oracles
}  // namespace layerbound
