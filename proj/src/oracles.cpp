#include "layerbound/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "layerbound/bounds.hpp"
#include "layerbound/error.hpp"
#include "layerbound/transverse.hpp"

namespace layerbound::oracles {
namespace {

using Real = long double;

constexpr Real kPi = 3.141592653589793238462643383279502884L;
constexpr Real kEulerGamma = 0.577215664901532860606512090082402431L;

// Power series below, Hankel asymptotic expansion above. The series is
// summed in extended precision; at x = 16 its largest term is ~1e5.
constexpr double kSwitchover = 16.0;

// sum_k (-1)^k (x^2/4)^k / (k! (k + order)!) and, for the Y series, the same
// weighted by harmonic-number coefficients.
struct Series {
  Real j;
  Real y_tail;
};

Series series_order0(Real x) {
  const Real q = x * x / 4;
  Real term = 1;  // (-1)^k q^k / (k!)^2
  Real j = 1;
  Real harmonic = 0;
  Real y_tail = 0;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<Real>(k) * k);
    harmonic += Real(1) / k;
    j += term;
    y_tail -= harmonic * term;  // (-1)^{k+1} H_k q^k / (k!)^2
    if (std::abs(term) * (1 + harmonic) < 1e-22L * std::max<Real>(1, std::abs(j)) && k > x)
      break;
  }
  return {j, y_tail};
}

// J1 = (x/2) sum (-1)^k q^k / (k! (k+1)!); the Y1 tail uses
// psi(k+1) + psi(k+2) = -2 gamma + H_k + H_{k+1}.
Series series_order1(Real x) {
  const Real q = x * x / 4;
  const Real half = x / 2;
  Real term = half;  // (-1)^k (x/2)^{2k+1} / (k! (k+1)!)
  Real j = term;
  Real hk = 0;
  Real hk1 = 1;
  Real y_tail = term * (hk + hk1);
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<Real>(k) * (k + 1));
    hk += Real(1) / k;
    hk1 += Real(1) / (k + 1);
    j += term;
    y_tail += term * (hk + hk1);
    if (std::abs(term) * (1 + hk1) < 1e-22L * std::max<Real>(1, std::abs(j)) && k > x) break;
  }
  return {j, y_tail};
}

struct Hankel {
  Real p;
  Real q;
};

Hankel hankel_pq(int order, Real x) {
  const Real mu = 4.0L * order * order;
  Real p = 1;
  Real q = 0;
  Real term = 1;
  Real previous = 1;
  for (int m = 1; m < 80; ++m) {
    const Real odd = 2.0L * m - 1;
    term *= (mu - odd * odd) / (8.0L * m * x);
    if (std::abs(term) > std::abs(previous)) break;  // asymptotic series turns
    const int sign = ((m / 2) % 2 == 0) ? 1 : -1;
    if (m % 2 == 1) {
      q += sign * term;
    } else {
      p += sign * term;
    }
    if (std::abs(term) < 1e-20L) break;
    previous = term;
  }
  return {p, q};
}

// J and Y of order 0 or 1 from the amplitude/phase form.
std::pair<Real, Real> asymptotic(int order, Real x) {
  const Hankel pq = hankel_pq(order, x);
  const Real chi = x - (2 * order + 1) * kPi / 4;
  const Real amp = std::sqrt(2 / (kPi * x));
  const Real c = std::cos(chi);
  const Real s = std::sin(chi);
  return {amp * (pq.p * c - pq.q * s), amp * (pq.p * s + pq.q * c)};
}

double cross_product(double k, double r_in, double r_out) {
  return bessel_j0(k * r_in) * bessel_y0(k * r_out) - bessel_j0(k * r_out) * bessel_y0(k * r_in);
}

}  // namespace

double bessel_j0(double x) {
  const Real ax = std::abs(static_cast<Real>(x));
  if (ax < kSwitchover) return static_cast<double>(series_order0(ax).j);
  return static_cast<double>(asymptotic(0, ax).first);
}

double bessel_j1(double x) {
  const Real ax = std::abs(static_cast<Real>(x));
  const Real sign = x < 0 ? -1 : 1;
  if (ax < kSwitchover) return static_cast<double>(sign * series_order1(ax).j);
  return static_cast<double>(sign * asymptotic(1, ax).first);
}

double bessel_y0(double x) {
  if (!(x > 0.0)) throw InputError("Y0 is defined for x > 0 only");
  const Real rx = x;
  if (x >= kSwitchover) return static_cast<double>(asymptotic(0, rx).second);
  const Series s = series_order0(rx);
  return static_cast<double>(2 / kPi * ((std::log(rx / 2) + kEulerGamma) * s.j + s.y_tail));
}

double bessel_y1(double x) {
  if (!(x > 0.0)) throw InputError("Y1 is defined for x > 0 only");
  const Real rx = x;
  if (x >= kSwitchover) return static_cast<double>(asymptotic(1, rx).second);
  const Series s = series_order1(rx);
  // Y1 = (2/pi) J1 ln(x/2) - 2/(pi x) - (1/pi) sum (-1)^k (psi(k+1)+psi(k+2)) (x/2)^{2k+1}/(k!(k+1)!)
  const Real psi_sum = s.y_tail - 2 * kEulerGamma * s.j;
  return static_cast<double>(2 / kPi * s.j * std::log(rx / 2) - 2 / (kPi * rx) - psi_sum / kPi);
}

double annulus_lowest_eigenvalue(const AnnulusSpec& spec) {
  if (!(spec.r_in > 0.0) || !(spec.r_out > spec.r_in) || !std::isfinite(spec.r_out))
    throw InputError("annulus needs 0 < r_in < r_out");
  const double base = std::numbers::pi / (spec.r_out - spec.r_in);
  const double k_max = 10.0 * base;
  const double step = 0.005 * base;
  double lo = 0.1 * base;
  double f_lo = cross_product(lo, spec.r_in, spec.r_out);
  double hi = lo;
  bool bracketed = false;
  while (hi < k_max) {
    hi = std::min(lo + step, k_max);
    const double f_hi = cross_product(hi, spec.r_in, spec.r_out);
    if (f_hi == 0.0) return hi * hi;
    if ((f_lo < 0.0) != (f_hi < 0.0)) {
      bracketed = true;
      break;
    }
    lo = hi;
    f_lo = f_hi;
  }
  if (!bracketed)
    throw NumericalError("no sign change of the annulus cross-product in [0.1, 10] pi/width");
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = cross_product(mid, spec.r_in, spec.r_out);
    if (f_mid == 0.0) return mid * mid;
    if ((f_lo < 0.0) == (f_mid < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  const double k = 0.5 * (lo + hi);
  return k * k;
}

double disk_lowest_eigenvalue(double radius) {
  if (!(radius > 0.0)) throw InputError("disk radius must be positive");
  const double j = bessel_j0_first_zero();
  return (j / radius) * (j / radius);
}

double psi_epsilon_quotient_closed_form(double eps, HalfWidth a) {
  const double av = a.value();
  if (!(eps > 0.0) || !(eps < std::min(1.0, av)))
    throw InputError("psi_epsilon needs 0 < eps < min{1, a}");
  // t = a - u. On the layer eps^2 < t < eps, psi = ln(t/eps^2)/L with
  // L = ln(1/eps), and the weight 1 - u/a equals t/a.
  const double L = -std::log(eps);
  const double eps2 = eps * eps;
  const double numerator = 1.0 / (av * L);
  const double bulk = (av * av - eps2) / (2.0 * av);
  const double layer = (eps2 * (L * L / 2.0 - L / 2.0 + 0.25) - eps2 * eps2 / 4.0) / (av * L * L);
  return 2.0 * numerator / (bulk + layer);
}

}  // namespace layerbound::oracles
