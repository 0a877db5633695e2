#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "layerbound/bounds.hpp"
#include "layerbound/error.hpp"
#include "layerbound/oracles.hpp"
#include "reference.hpp"

using namespace layerbound;

namespace {

const double kPi2 = std::numbers::pi * std::numbers::pi;

CurvatureSummary box(double k1m, double k1p, double k2m, double k2p) {
  CurvatureSummary s;
  s.k1_minus = k1m;
  s.k1_plus = k1p;
  s.k2_minus = k2m;
  s.k2_plus = k2p;
  s.max_abs = std::max({std::abs(k1m), std::abs(k1p), std::abs(k2m), std::abs(k2p)});
  return s;
}

std::vector<double> u_grid(double a, int points) {
  std::vector<double> u(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    u[static_cast<std::size_t>(i)] = a * (2.0 * i - (points - 1)) / (points - 1);
  return u;
}

}  // namespace

TEST_CASE("constant curvature summaries give the flat eigenvalue") {
  const HalfWidth a(1.0);
  const SolverOptions opts{.n = 1000};
  for (double k : {0.0, 0.5}) {
    const BoundReport r = theorem1_bound(box(k, k, k, k), a, opts);
    CHECK(r.lower_bound == doctest::Approx(kPi2 / 4.0).epsilon(1e-9));
    REQUIRE(r.floor.has_value());
    CHECK(r.branch == Branch::k1_plus_k2_minus);
  }
}

TEST_CASE("cylinder bound equals the annulus value") {
  const BoundReport r = theorem1_bound(box(0.0, 0.0, 0.5, 0.5), HalfWidth(1.0), {.n = 2000});
  CHECK(r.lower_bound ==
        doctest::Approx(oracles::annulus_lowest_eigenvalue({1.0, 3.0})).epsilon(1e-8));
  CHECK(r.lower_bound >= faber_krahn_floor(HalfWidth(1.0)) - 10.0 * r.solver_error);
}

TEST_CASE("torus branches against the dense reference") {
  const HalfWidth a(0.25);
  const auto summary = curvature_summary(surfaces::torus(2.0, 0.5), {256, 256});
  const BoundReport r = theorem1_bound(summary, a, {.n = 2000});
  const double b1 = reference::weighted_fd_extrapolated(0.4, 2.0, 0.25, 2000);
  const double b2 = reference::weighted_fd_extrapolated(-2.0 / 3.0, 2.0, 0.25, 2000);
  CHECK(r.lambda_branch_values[0] == doctest::Approx(b1).epsilon(1e-7));
  CHECK(r.lambda_branch_values[1] == doctest::Approx(b2).epsilon(1e-7));
  CHECK(r.lower_bound == std::min(r.lambda_branch_values[0], r.lambda_branch_values[1]));
  CHECK(r.branch == Branch::k1_minus_k2_plus);
  CHECK_FALSE(r.floor.has_value());
  CHECK(r.hypothesis.pass);
}

TEST_CASE("branch attribution is invariant under orientation flip") {
  const HalfWidth a(0.25);
  const auto summary = curvature_summary(surfaces::torus(2.0, 0.5), {64, 64});
  const BoundReport r = theorem1_bound(summary, a, {.n = 500});
  const BoundReport f = theorem1_bound(summary.flipped(), a, {.n = 500});
  CHECK(f.lower_bound == doctest::Approx(r.lower_bound).epsilon(1e-10));
  CHECK(f.branch == r.branch);
}

TEST_CASE("hypothesis failure") {
  try {
    (void)theorem1_bound(box(0.5, 0.5, 0.5, 0.5), HalfWidth(2.0));
    FAIL("expected HypothesisError");
  } catch (const HypothesisError& e) {
    CHECK_FALSE(e.diagnostic().pass);
    CHECK(e.diagnostic().product == doctest::Approx(1.0));
  }
}

TEST_CASE("disk floor") {
  const double j01 = bessel_j0_first_zero();
  CHECK(faber_krahn_floor(HalfWidth(1.0)) == doctest::Approx(j01 * j01 / 4.0));
  CHECK(faber_krahn_floor(HalfWidth(1.0)) == doctest::Approx(1.4458).epsilon(1e-4));
  CHECK(faber_krahn_floor(HalfWidth(0.5)) == doctest::Approx(4.0 * faber_krahn_floor(HalfWidth(1.0))));
  CHECK(faber_krahn_floor(HalfWidth(2.0)) == doctest::Approx(0.25 * faber_krahn_floor(HalfWidth(1.0))));
}

TEST_CASE("non-negative curvature bounds stay above the floor") {
  const HalfWidth a(1.0);
  for (double k2 : {0.2, 0.6, 0.95}) {
    const BoundReport r = theorem1_bound(box(0.1, 0.3, k2, k2), a, {.n = 800});
    REQUIRE(r.floor.has_value());
    CHECK(r.lower_bound >= *r.floor - 10.0 * r.solver_error);
  }
}

TEST_CASE("Hardy weights") {
  const HalfWidth a(1.0);
  auto w = hardy_weights_at(0.0, a);
  CHECK(w.optimal == 1.0);
  CHECK(w.classical == 0.25);
  w = hardy_weights_at(0.9, a);
  CHECK(w.optimal == doctest::Approx(1.0 / (0.19 * 0.19)));
  CHECK(w.classical == doctest::Approx(25.0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-0.999, 0.999);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    const auto h = hardy_weights_at(x, a);
    CHECK(h.optimal / h.classical == doctest::Approx(4.0 / std::pow(1.0 + std::abs(x), 2)));
  }
  CHECK_THROWS_AS(hardy_weights_at(1.0, a), InputError);
}

TEST_CASE("Hardy inequality residuals") {
  const HalfWidth a(1.0);
  const TestFunction cosine = TestFunction::sample(
      [](double u) { return std::cos(std::numbers::pi * u / 2.0); }, a, GridSpec(4000));
  const HardyResidual flat = verify_hardy_inequality(cosine, {0.0, 0.0}, a);
  CHECK(flat.hardy == 0.0);
  CHECK(std::abs(flat.residual) <= 1e-5 * flat.kinetic);

  const TestFunction psi = psi_epsilon_profile(1e-3, a, GridSpec(2000));
  const HardyResidual deg = verify_hardy_inequality(psi, {-1.0, 1.0}, a);
  CHECK(deg.poincare <= 1e-10 * deg.kinetic);
  CHECK(deg.residual >= 0.0);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double c0 = 2.0 + c(rng), c1 = c(rng), c2 = c(rng), c3 = c(rng);
    const TestFunction phi = TestFunction::sample(
        [=](double u) { return (1.0 - u * u) * (c0 + u * (c1 + u * (c2 + u * c3))); }, a,
        GridSpec(500));
    CHECK(verify_hardy_inequality(phi, {0.5, -0.5}, a).residual >= -1e-8);
  }
}

TEST_CASE("pointwise potential inequality") {
  const auto torus = curvature_summary(surfaces::torus(2.0, 0.5), {256, 256});
  const auto u = u_grid(0.25, 401);
  CHECK(potential_min_inequality_check(1.0, 1.0, box(0.5, 1.5, 0.5, 1.5), u_grid(0.5, 401)));
  // Each branch pair attains the minimum wherever its own potential is lower.
  CHECK(potential_min_slack(torus.k1_plus, torus.k2_minus, torus, u) >= 0.0);
  CHECK(std::abs(potential_min_slack(torus.k1_minus, torus.k2_plus, torus, u)) <= 1e-12);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> t(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double k1 = torus.k1_minus + (torus.k1_plus - torus.k1_minus) * t(rng);
    const double k2 = torus.k2_minus + (torus.k2_plus - torus.k2_minus) * t(rng);
    CHECK(potential_min_inequality_check(k1, k2, torus, u));
  }
  CHECK_THROWS_AS(potential_min_inequality_check(1.0, 2.0, torus, u), InputError);
}
