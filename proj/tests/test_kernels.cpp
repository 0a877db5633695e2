#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "layerbound/kernels.hpp"

namespace k = layerbound::kernels;

namespace {

std::vector<double> sorted_nodes(std::mt19937_64& rng, std::size_t count) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> x(count);
  for (double& v : x) v = d(rng);
  std::sort(x.begin(), x.end());
  x.front() = -1.0;
  x.back() = 1.0;
  return x;
}

struct Elements {
  explicit Elements(std::size_t m) : s(m), ll(m), lr(m), rr(m) {}
  k::ElementIntegrals view() { return {s, ll, lr, rr}; }
  std::vector<double> s, ll, lr, rr;
};

}  // namespace

TEST_CASE("scalar element integrals reproduce the flat P1 matrices") {
  const std::vector<double> x{0.0, 0.5, 1.5};
  Elements e(2);
  k::scalar::element_integrals(x, 0.0, 0.0, e.view());
  CHECK(e.s[0] == doctest::Approx(2.0));
  CHECK(e.s[1] == doctest::Approx(1.0));
  CHECK(e.ll[0] == doctest::Approx(0.5 / 3.0));
  CHECK(e.lr[0] == doctest::Approx(0.5 / 6.0));
  CHECK(e.rr[1] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("scalar element integrals match quadrature of the weight") {
  const double k1 = 0.7, k2 = -0.4;
  const std::vector<double> x{-0.9, -0.2, 0.35};
  Elements e(2);
  k::scalar::element_integrals(x, k1, k2, e.view());
  for (std::size_t i = 0; i < 2; ++i) {
    const double x0 = x[i], h = x[i + 1] - x[i];
    // 3-point Gauss-Legendre is exact for the quartic integrands.
    const double gx[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
    const double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    double iw = 0, ll = 0, lr = 0, rr = 0;
    for (int g = 0; g < 3; ++g) {
      const double t = 0.5 * (gx[g] + 1.0);
      const double u = x0 + h * t;
      const double w = (1 - k1 * u) * (1 - k2 * u) * 0.5 * gw[g] * h;
      iw += w;
      ll += w * (1 - t) * (1 - t);
      lr += w * (1 - t) * t;
      rr += w * t * t;
    }
    CHECK(e.s[i] == doctest::Approx(iw / (h * h)).epsilon(1e-14));
    CHECK(e.ll[i] == doctest::Approx(ll).epsilon(1e-14));
    CHECK(e.lr[i] == doctest::Approx(lr).epsilon(1e-14));
    CHECK(e.rr[i] == doctest::Approx(rr).epsilon(1e-14));
  }
}

TEST_CASE("potential kernel vanishes for equal curvatures") {
  const std::vector<double> u{-0.5, 0.0, 0.25};
  std::vector<double> v(3);
  k::scalar::potential_values(u, 0.4, 0.4, v);
  for (double x : v) CHECK(x == 0.0);
}

TEST_CASE("dispatcher reports a known instruction set") {
  const k::Isa isa = k::active_isa();
  CHECK((isa == k::Isa::scalar || isa == k::Isa::avx2));
  CHECK(std::string(k::isa_name(isa)).size() > 0);
}

#if defined(LAYERBOUND_HAVE_AVX2)

TEST_CASE("avx2 kernels agree with the scalar references") {
  if (!__builtin_cpu_supports("avx2")) return;
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> curv(-0.95, 0.95);

  for (std::size_t count : {2u, 3u, 4u, 5u, 6u, 7u, 8u, 9u, 13u, 17u, 64u, 1001u}) {
    CAPTURE(count);
    const std::vector<double> x = sorted_nodes(rng, count);
    const double k1 = curv(rng), k2 = curv(rng);
    const std::size_t m = count - 1;

    Elements a(m), b(m);
    k::scalar::element_integrals(x, k1, k2, a.view());
    k::avx2::element_integrals(x, k1, k2, b.view());
    CHECK(a.s == b.s);
    CHECK(a.ll == b.ll);
    CHECK(a.lr == b.lr);
    CHECK(a.rr == b.rr);

    std::vector<double> values(count);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    for (double& v : values) v = val(rng);
    values.front() = values.back() = 0.0;
    const k::QuotientParts qa = k::scalar::weighted_quotient_parts(x, values, k1, k2);
    const k::QuotientParts qb = k::avx2::weighted_quotient_parts(x, values, k1, k2);
    CHECK(qb.energy == doctest::Approx(qa.energy).epsilon(1e-13));
    CHECK(qb.norm == doctest::Approx(qa.norm).epsilon(1e-13));

    std::vector<double> va(count), vb(count);
    k::scalar::potential_values(x, k1, k2, va);
    k::avx2::potential_values(x, k1, k2, vb);
    CHECK(va == vb);

    const double sa = k::scalar::potential_min_slack(x, k1, k2, 0.9, -0.9, -0.9, 0.9, 1e-6);
    const double sb = k::avx2::potential_min_slack(x, k1, k2, 0.9, -0.9, -0.9, 0.9, 1e-6);
    CHECK(sa == sb);
  }
}

TEST_CASE("avx2 potential slack covers both small-u branches") {
  if (!__builtin_cpu_supports("avx2")) return;
  std::vector<double> u;
  for (int i = -20; i <= 20; ++i) u.push_back(i * 1e-7);
  for (int i = -20; i <= 20; ++i) u.push_back(i * 0.04);
  const double sa = k::scalar::potential_min_slack(u, 0.3, -0.2, 0.4, -0.6, -0.6, 0.4, 1e-6);
  const double sb = k::avx2::potential_min_slack(u, 0.3, -0.2, 0.4, -0.6, -0.6, 0.4, 1e-6);
  CHECK(sa == sb);
  CHECK(sa >= -1e-12);
}

#endif
