#include "layerbound/sampled_chart.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "layerbound/error.hpp"

namespace layerbound {
namespace {

constexpr double kSpacingTolerance = 1e-6;

double uniform_step(const std::vector<double>& axis, const char* name) {
  const double step = (axis.back() - axis.front()) / static_cast<double>(axis.size() - 1);
  if (!(step > 0.0)) throw InputError(std::string("sampled chart: ") + name + " must increase");
  for (std::size_t i = 0; i + 1 < axis.size(); ++i) {
    if (std::abs((axis[i + 1] - axis[i]) - step) > kSpacingTolerance * std::abs(step))
      throw InputError(std::string("sampled chart: ") + name + " axis is not uniformly spaced");
  }
  return step;
}

}  // namespace

SampledChart read_sampled_chart(std::istream& in) {
  SampledChart c;
  int pp = 0, pq = 0;
  if (!(in >> c.p_count >> c.q_count >> pp >> pq))
    throw InputError("sampled chart: bad header (expected 'p_count q_count periodic_p periodic_q')");
  if (c.p_count < 16 || c.q_count < 16)
    throw InputError("sampled chart: need at least 16 samples per axis");
  if ((pp != 0 && pp != 1) || (pq != 0 && pq != 1))
    throw InputError("sampled chart: periodic flags must be 0 or 1");
  c.periodic_p = pp == 1;
  c.periodic_q = pq == 1;
  const std::size_t total = static_cast<std::size_t>(c.p_count) * static_cast<std::size_t>(c.q_count);
  c.points.resize(total);
  c.p.resize(static_cast<std::size_t>(c.p_count));
  c.q.resize(static_cast<std::size_t>(c.q_count));
  for (int i = 0; i < c.p_count; ++i) {
    for (int j = 0; j < c.q_count; ++j) {
      double p, q, x, y, z;
      if (!(in >> p >> q >> x >> y >> z)) {
        std::ostringstream os;
        os << "sampled chart: missing or malformed row " << (i * c.q_count + j + 1);
        throw InputError(os.str());
      }
      if (j == 0) c.p[static_cast<std::size_t>(i)] = p;
      if (i == 0) c.q[static_cast<std::size_t>(j)] = q;
      if (p != c.p[static_cast<std::size_t>(i)] || q != c.q[static_cast<std::size_t>(j)])
        throw InputError("sampled chart: rows must form a grid with q varying fastest");
      c.points[static_cast<std::size_t>(i) * static_cast<std::size_t>(c.q_count) +
               static_cast<std::size_t>(j)] = Eigen::Vector3d(x, y, z);
    }
  }
  uniform_step(c.p, "p");
  uniform_step(c.q, "q");
  return c;
}

SampledChart load_sampled_chart(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open sampled chart '" + path + "'");
  return read_sampled_chart(in);
}

void write_sampled_chart(std::ostream& out, const ParametricSurface& surface,
                         SampleResolution resolution) {
  const ParameterDomain& d = surface.domain;
  auto axis = [](double lo, double hi, bool periodic, int count) {
    std::vector<double> x(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
      x[static_cast<std::size_t>(i)] =
          lo + (hi - lo) * (periodic ? static_cast<double>(i) / count
                                     : static_cast<double>(i) / (count - 1));
    return x;
  };
  const auto ps = axis(d.p0, d.p1, d.periodic_p, resolution.p);
  const auto qs = axis(d.q0, d.q1, d.periodic_q, resolution.q);
  const auto old_precision = out.precision(17);
  out << resolution.p << ' ' << resolution.q << ' ' << (d.periodic_p ? 1 : 0) << ' '
      << (d.periodic_q ? 1 : 0) << '\n';
  for (const double p : ps) {
    for (const double q : qs) {
      const Eigen::Vector3d r = surface.chart(p, q);
      out << p << ' ' << q << ' ' << r.x() << ' ' << r.y() << ' ' << r.z() << '\n';
    }
  }
  out.precision(old_precision);
}

CurvatureSummary curvature_summary(const SampledChart& c, int orientation) {
  const double hp = (c.p.back() - c.p.front()) / (c.p_count - 1);
  const double hq = (c.q.back() - c.q.front()) / (c.q_count - 1);
  auto wrap = [](int i, int n) { return (i % n + n) % n; };
  const int i0 = c.periodic_p ? 0 : 1, i1 = c.periodic_p ? c.p_count : c.p_count - 1;
  const int j0 = c.periodic_q ? 0 : 1, j1 = c.periodic_q ? c.q_count : c.q_count - 1;
  if (i1 <= i0 || j1 <= j0) throw InputError("sampled chart has no interior nodes");
  std::vector<PrincipalCurvaturePair> samples;
  samples.reserve(static_cast<std::size_t>(i1 - i0) * static_cast<std::size_t>(j1 - j0));
  for (int i = i0; i < i1; ++i) {
    const int ip = wrap(i + 1, c.p_count), im = wrap(i - 1, c.p_count);
    for (int j = j0; j < j1; ++j) {
      const int jp = wrap(j + 1, c.q_count), jm = wrap(j - 1, c.q_count);
      ChartDerivatives d;
      d.r = c.at(i, j);
      d.r_p = (c.at(ip, j) - c.at(im, j)) / (2.0 * hp);
      d.r_q = (c.at(i, jp) - c.at(i, jm)) / (2.0 * hq);
      d.r_pp = (c.at(ip, j) - 2.0 * d.r + c.at(im, j)) / (hp * hp);
      d.r_qq = (c.at(i, jp) - 2.0 * d.r + c.at(i, jm)) / (hq * hq);
      d.r_pq = (c.at(ip, jp) - c.at(ip, jm) - c.at(im, jp) + c.at(im, jm)) / (4.0 * hp * hq);
      samples.push_back(principal_curvatures_at(
          forms_from_derivatives(d, orientation, c.p[static_cast<std::size_t>(i)],
                                 c.q[static_cast<std::size_t>(j)], "sampled")));
    }
  }
  return summarize(samples, {c.p_count, c.q_count});
}

}  // namespace layerbound
