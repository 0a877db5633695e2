#pragma once

// Plain-text sampled charts:
//
//   p_count q_count periodic_p periodic_q
//   p q x y z          (p_count * q_count rows, q varying fastest)
//
// Both parameter axes must be uniformly spaced. Partials come from central
// differences on the sample grid; non-periodic boundary rows are not
// evaluated.

#include <Eigen/Core>
#include <iosfwd>
#include <string>
#include <vector>

#include "layerbound/geometry.hpp"

namespace layerbound {

struct SampledChart {
  int p_count = 0;
  int q_count = 0;
  bool periodic_p = false;
  bool periodic_q = false;
  std::vector<double> p;                ///< p_count values
  std::vector<double> q;                ///< q_count values
  std::vector<Eigen::Vector3d> points;  ///< index i * q_count + j

  const Eigen::Vector3d& at(int i, int j) const {
    return points[static_cast<std::size_t>(i) * static_cast<std::size_t>(q_count) +
                  static_cast<std::size_t>(j)];
  }
};

/// Throws InputError on malformed input.
SampledChart read_sampled_chart(std::istream& in);
SampledChart load_sampled_chart(const std::string& path);

/// Samples a parametric surface on the grid curvature_summary would use.
void write_sampled_chart(std::ostream& out, const ParametricSurface& surface,
                         SampleResolution resolution);

/// Extrema over every grid node with a full central-difference stencil.
CurvatureSummary curvature_summary(const SampledChart& chart, int orientation = 1);

}  // namespace layerbound
