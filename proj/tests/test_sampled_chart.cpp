#include <doctest.h>

#include <sstream>

#include "layerbound/error.hpp"
#include "layerbound/sampled_chart.hpp"

using namespace layerbound;

TEST_CASE("sampled torus reproduces the analytic extrema") {
  std::stringstream file;
  write_sampled_chart(file, surfaces::torus(2.0, 0.5), {256, 256});
  const SampledChart chart = read_sampled_chart(file);
  CHECK(chart.p_count == 256);
  CHECK(chart.periodic_p);
  CHECK(chart.periodic_q);
  const CurvatureSummary s = curvature_summary(chart);
  // Central differences: O(h^2) with h = 2 pi / 256.
  CHECK(s.k1_minus == doctest::Approx(-2.0 / 3.0).epsilon(1e-3));
  CHECK(s.k1_plus == doctest::Approx(0.4).epsilon(1e-3));
  CHECK(s.k2_plus == doctest::Approx(2.0).epsilon(1e-3));
  const CurvatureSummary f = curvature_summary(chart, -1);
  CHECK(f.k2_plus == doctest::Approx(-s.k1_minus));
}

TEST_CASE("non-periodic chart uses interior nodes only") {
  std::stringstream file;
  write_sampled_chart(file, surfaces::paraboloid(0.5, 1.0), {33, 33});
  const CurvatureSummary s = curvature_summary(read_sampled_chart(file));
  // z = c r^2: both curvatures equal 2c at the vertex.
  CHECK(s.k2_plus == doctest::Approx(1.0).epsilon(1e-2));
  CHECK(s.resolution.p == 33);
}

TEST_CASE("malformed files are rejected") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_sampled_chart(in);
  };
  CHECK_THROWS_AS(parse(""), InputError);
  CHECK_THROWS_AS(parse("4 4 0 0\n"), InputError);
  CHECK_THROWS_AS(parse("16 16 0 0\n0 0 0 0 0\n"), InputError);
  CHECK_THROWS_AS(parse("16 16 2 0\n"), InputError);
  std::ostringstream uneven;
  uneven << "16 16 0 0\n";
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      uneven << (i == 3 ? 3.3 : i) << ' ' << j << ' ' << i << ' ' << j << " 0\n";
  CHECK_THROWS_AS(parse(uneven.str()), InputError);
  CHECK_THROWS_AS(load_sampled_chart("/nonexistent/chart.txt"), InputError);
}
