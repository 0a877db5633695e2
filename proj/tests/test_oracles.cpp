#include <doctest.h>

#include <cmath>
#include <numbers>

#include "layerbound/bounds.hpp"
#include "layerbound/error.hpp"
#include "layerbound/oracles.hpp"
#include "layerbound/transverse.hpp"
#include "reference.hpp"

using namespace layerbound;
using namespace layerbound::oracles;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("Bessel functions against the standard library") {
  for (double x = 0.05; x < 60.0; x += 0.173) {
    CAPTURE(x);
    CHECK(bessel_j0(x) == doctest::Approx(std::cyl_bessel_j(0.0, x)).epsilon(1e-12).scale(1.0));
    CHECK(bessel_j1(x) == doctest::Approx(std::cyl_bessel_j(1.0, x)).epsilon(1e-12).scale(1.0));
    CHECK(bessel_y0(x) == doctest::Approx(std::cyl_neumann(0.0, x)).epsilon(1e-12).scale(1.0));
    CHECK(bessel_y1(x) == doctest::Approx(std::cyl_neumann(1.0, x)).epsilon(1e-12).scale(1.0));
  }
  CHECK(bessel_j0(0.0) == 1.0);
  CHECK(bessel_j1(0.0) == 0.0);
  CHECK_THROWS_AS(bessel_y0(0.0), InputError);
  CHECK_THROWS_AS(bessel_y1(-1.0), InputError);
}

TEST_CASE("Wronskian J0 Y0' - J0' Y0 = 2 / (pi x)") {
  double worst = 0.0;
  for (double x = 0.5; x <= 40.0; x += 0.05) {
    const double w = bessel_j1(x) * bessel_y0(x) - bessel_j0(x) * bessel_y1(x);
    worst = std::max(worst, std::abs(w - 2.0 / (kPi * x)));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("first zero of J0") {
  const double j01 = bessel_j0_first_zero();
  CHECK(std::abs(j01 - 2.404825557695773) <= 2.404825557695773 * 1e-12);
  CHECK(std::abs(bessel_j0(j01)) <= 1e-13);
  CHECK(bessel_j0(2.0) > 0.0);
  CHECK(bessel_j0(3.0) < 0.0);
  CHECK(std::abs(bessel_j0(2.404825557695773)) <= 1e-12);
}

TEST_CASE("disk eigenvalue") {
  const double j01 = bessel_j0_first_zero();
  CHECK(disk_lowest_eigenvalue(2.0) == doctest::Approx(j01 * j01 / 4.0));
  CHECK(disk_lowest_eigenvalue(2.0) == doctest::Approx(1.4458).epsilon(1e-4));
  CHECK(disk_lowest_eigenvalue(1.0) == doctest::Approx(5.7832).epsilon(1e-4));
}

TEST_CASE("annulus eigenvalue") {
  const double v = annulus_lowest_eigenvalue({1.0, 3.0});
  const double k = std::sqrt(v);
  CHECK(std::abs(bessel_j0(k) * bessel_y0(3.0 * k) - bessel_j0(3.0 * k) * bessel_y0(k)) <= 1e-10);
  // Radial finite differences, an independent discretization.
  CHECK(reference::annulus_radial_fd(1.0, 3.0, 4000) == doctest::Approx(v).epsilon(1e-8));
  // Scaling and limits.
  CHECK(annulus_lowest_eigenvalue({2.5, 7.5}) == doctest::Approx(v / 6.25).epsilon(1e-12));
  CHECK(annulus_lowest_eigenvalue({1000.0, 1002.0}) ==
        doctest::Approx(kPi * kPi / 4.0).epsilon(1e-4));
}

TEST_CASE("small holes approach the disk logarithmically") {
  const double disk = disk_lowest_eigenvalue(2.0);
  CHECK(annulus_lowest_eigenvalue({1e-4, 2.0}) ==
        doctest::Approx(reference::annulus_radial_fd(1e-4, 2.0, 20000)).epsilon(1e-4));
  double previous = INFINITY;
  for (double e : {1e-2, 1e-4, 1e-8, 1e-16}) {
    const double v = annulus_lowest_eigenvalue({e, 2.0});
    CHECK(v > disk);
    CHECK(v < previous);
    previous = v;
  }
  // (lambda(eps) - lambda_disk) ln(2 / eps) tends to a constant.
  const double c8 = (annulus_lowest_eigenvalue({1e-8, 2.0}) - disk) * std::log(2e8);
  const double c16 = (annulus_lowest_eigenvalue({1e-16, 2.0}) - disk) * std::log(2e16);
  CHECK(c16 == doctest::Approx(c8).epsilon(0.05));
}

TEST_CASE("annulus eigenvalue is non-increasing in curvature at fixed width") {
  const double a = 1.0;
  double previous = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 20; ++i) {
    const double kappa = i / (20.0 * a);
    const double v = i == 20 ? disk_lowest_eigenvalue(2.0 * a)
                             : annulus_lowest_eigenvalue({1.0 / kappa - a, 1.0 / kappa + a});
    CHECK(v <= previous);
    previous = v;
  }
}

TEST_CASE("psi_epsilon closed form") {
  const HalfWidth a(1.0);
  CHECK(psi_epsilon_quotient_closed_form(1e-3, a) == doctest::Approx(0.579).epsilon(0.01));
  double previous = std::numeric_limits<double>::infinity();
  for (double eps : {1e-2, 1e-3, 1e-4, 1e-6}) {
    const double v = psi_epsilon_quotient_closed_form(eps, a);
    CHECK(v < previous);
    previous = v;
  }
  CHECK(psi_epsilon_quotient_closed_form(1e-12, a) < 0.2);
  CHECK_THROWS_AS(psi_epsilon_quotient_closed_form(0.0, a), InputError);
  CHECK_THROWS_AS(psi_epsilon_quotient_closed_form(1.0, a), InputError);
}

TEST_CASE("psi_epsilon closed form against quadrature") {
  for (double av : {1.0, 0.5})
    for (double eps : {1e-2, 1e-3}) {
      const HalfWidth a(av);
      const double e2 = eps * eps;
      auto psi = [&](double t) { return std::log(t / e2) / std::log(1.0 / eps); };
      // Layer integrals in s = ln t, where dt = t ds.
      const double s0 = std::log(e2), s1 = std::log(eps);
      const double num = reference::simpson(
          [&](double s) {
            const double t = std::exp(s);
            const double d = 1.0 / (t * std::log(1.0 / eps));
            return d * d * (t / av) * t;
          },
          s0, s1, 2000);
      const double layer = reference::simpson(
          [&](double s) {
            const double t = std::exp(s);
            return psi(t) * psi(t) * (t / av) * t;
          },
          s0, s1, 2000);
      const double bulk =
          reference::simpson([&](double u) { return 1.0 - u / av; }, 0.0, av - eps, 200);
      CHECK(psi_epsilon_quotient_closed_form(eps, a) ==
            doctest::Approx(2.0 * num / (bulk + layer)).epsilon(1e-9));
    }
}

TEST_CASE("reference bisection agrees with dense QR") {
  Eigen::VectorXd d(200), e(199);
  for (int i = 0; i < 200; ++i) d[i] = 2.0 + 0.3 * std::sin(i * 0.7);
  for (int i = 0; i < 199; ++i) e[i] = -1.0 + 0.1 * std::cos(i * 1.3);
  CHECK(reference::smallest_eigenvalue(d, e) ==
        doctest::Approx(reference::smallest_eigenvalue_dense(d, e)).epsilon(1e-12));
}
