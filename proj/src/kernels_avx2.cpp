// Compiled with -mavx2 (no FMA, so products and sums round exactly as in the
// scalar reference). Only reached when the CPU reports AVX2 support.

#include <immintrin.h>

#include <algorithm>
#include <limits>

#include "layerbound/kernels.hpp"

namespace layerbound::kernels::avx2 {
namespace {

constexpr std::size_t kLanes = 4;

struct Element {
  __m256d h, c0, c1, c2;
};

inline Element expand(__m256d x0, __m256d x1, __m256d k1, __m256d k2) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d h = _mm256_sub_pd(x1, x0);
  const __m256d f1 = _mm256_sub_pd(one, _mm256_mul_pd(k1, x0));
  const __m256d f2 = _mm256_sub_pd(one, _mm256_mul_pd(k2, x0));
  const __m256d c0 = _mm256_mul_pd(f1, f2);
  const __m256d neg_k1f2 = _mm256_xor_pd(_mm256_mul_pd(k1, f2), _mm256_set1_pd(-0.0));
  const __m256d c1 = _mm256_mul_pd(h, _mm256_sub_pd(neg_k1f2, _mm256_mul_pd(k2, f1)));
  const __m256d c2 = _mm256_mul_pd(_mm256_mul_pd(k1, k2), _mm256_mul_pd(h, h));
  return {h, c0, c1, c2};
}

// h * ((c0 / a + c1 / b) + c2 / c)
inline __m256d combine(const Element& el, double a, double b, double c) {
  const __m256d s = _mm256_add_pd(_mm256_div_pd(el.c0, _mm256_set1_pd(a)),
                                  _mm256_div_pd(el.c1, _mm256_set1_pd(b)));
  return _mm256_mul_pd(el.h, _mm256_add_pd(s, _mm256_div_pd(el.c2, _mm256_set1_pd(c))));
}

inline __m256d integral(const Element& el) {
  const __m256d s = _mm256_add_pd(el.c0, _mm256_div_pd(el.c1, _mm256_set1_pd(2.0)));
  return _mm256_mul_pd(el.h, _mm256_add_pd(s, _mm256_div_pd(el.c2, _mm256_set1_pd(3.0))));
}

inline __m256d potential(__m256d u, __m256d k1, __m256d k2) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d d = _mm256_sub_pd(k1, k2);
  const __m256d f1 = _mm256_sub_pd(one, _mm256_mul_pd(k1, u));
  const __m256d f2 = _mm256_sub_pd(one, _mm256_mul_pd(k2, u));
  const __m256d num = _mm256_mul_pd(_mm256_set1_pd(0.25), _mm256_mul_pd(d, d));
  const __m256d den = _mm256_mul_pd(_mm256_mul_pd(f1, f1), _mm256_mul_pd(f2, f2));
  return _mm256_xor_pd(_mm256_div_pd(num, den), _mm256_set1_pd(-0.0));
}

inline __m256d potential_factored(__m256d u, __m256d k1, __m256d k2) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d g = _mm256_sub_pd(_mm256_div_pd(one, _mm256_sub_pd(one, _mm256_mul_pd(k1, u))),
                                  _mm256_div_pd(one, _mm256_sub_pd(one, _mm256_mul_pd(k2, u))));
  const __m256d den = _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(4.0), u), u);
  return _mm256_xor_pd(_mm256_div_pd(_mm256_mul_pd(g, g), den), _mm256_set1_pd(-0.0));
}

inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double horizontal_min(__m256d v) {
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, v);
  return std::min(std::min(lanes[0], lanes[1]), std::min(lanes[2], lanes[3]));
}

}  // namespace

void element_integrals(std::span<const double> nodes, double k1, double k2,
                       const ElementIntegrals& out) {
  const std::size_t elements = out.stiffness.size();
  const __m256d vk1 = _mm256_set1_pd(k1);
  const __m256d vk2 = _mm256_set1_pd(k2);
  std::size_t e = 0;
  for (; e + kLanes <= elements; e += kLanes) {
    const Element el = expand(_mm256_loadu_pd(&nodes[e]), _mm256_loadu_pd(&nodes[e + 1]), vk1, vk2);
    _mm256_storeu_pd(&out.stiffness[e], _mm256_div_pd(integral(el), _mm256_mul_pd(el.h, el.h)));
    _mm256_storeu_pd(&out.mass_ll[e], combine(el, 3.0, 12.0, 30.0));
    _mm256_storeu_pd(&out.mass_lr[e], combine(el, 6.0, 12.0, 20.0));
    _mm256_storeu_pd(&out.mass_rr[e], combine(el, 3.0, 4.0, 5.0));
  }
  if (e < elements) {
    const std::size_t rest = elements - e;
    scalar::element_integrals(nodes.subspan(e), k1, k2,
                              {out.stiffness.subspan(e, rest), out.mass_ll.subspan(e, rest),
                               out.mass_lr.subspan(e, rest), out.mass_rr.subspan(e, rest)});
  }
}

QuotientParts weighted_quotient_parts(std::span<const double> nodes,
                                      std::span<const double> values,
                                      double k1, double k2) {
  const std::size_t elements = nodes.size() < 2 ? 0 : nodes.size() - 1;
  const __m256d vk1 = _mm256_set1_pd(k1);
  const __m256d vk2 = _mm256_set1_pd(k2);
  __m256d energy = _mm256_setzero_pd();
  __m256d norm = _mm256_setzero_pd();
  std::size_t e = 0;
  for (; e + kLanes <= elements; e += kLanes) {
    const Element el = expand(_mm256_loadu_pd(&nodes[e]), _mm256_loadu_pd(&nodes[e + 1]), vk1, vk2);
    const __m256d stiff = _mm256_div_pd(integral(el), _mm256_mul_pd(el.h, el.h));
    const __m256d mll = combine(el, 3.0, 12.0, 30.0);
    const __m256d mlr = combine(el, 6.0, 12.0, 20.0);
    const __m256d mrr = combine(el, 3.0, 4.0, 5.0);
    const __m256d vl = _mm256_loadu_pd(&values[e]);
    const __m256d vr = _mm256_loadu_pd(&values[e + 1]);
    const __m256d dv = _mm256_sub_pd(vr, vl);
    energy = _mm256_add_pd(energy, _mm256_mul_pd(stiff, _mm256_mul_pd(dv, dv)));
    const __m256d cross = _mm256_mul_pd(_mm256_set1_pd(2.0), _mm256_mul_pd(mlr, _mm256_mul_pd(vl, vr)));
    const __m256d term = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(mll, _mm256_mul_pd(vl, vl)), cross),
                                       _mm256_mul_pd(mrr, _mm256_mul_pd(vr, vr)));
    norm = _mm256_add_pd(norm, term);
  }
  QuotientParts parts{horizontal_sum(energy), horizontal_sum(norm)};
  if (e < elements) {
    const QuotientParts tail = scalar::weighted_quotient_parts(nodes.subspan(e), values.subspan(e), k1, k2);
    parts.energy += tail.energy;
    parts.norm += tail.norm;
  }
  return parts;
}

void potential_values(std::span<const double> u, double k1, double k2,
                      std::span<double> out) {
  const __m256d vk1 = _mm256_set1_pd(k1);
  const __m256d vk2 = _mm256_set1_pd(k2);
  std::size_t i = 0;
  for (; i + kLanes <= u.size(); i += kLanes)
    _mm256_storeu_pd(&out[i], potential(_mm256_loadu_pd(&u[i]), vk1, vk2));
  if (i < u.size()) scalar::potential_values(u.subspan(i), k1, k2, out.subspan(i));
}

double potential_min_slack(std::span<const double> u, double k1, double k2,
                           double b1_k1, double b1_k2, double b2_k1,
                           double b2_k2, double small_u) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  const __m256d threshold = _mm256_set1_pd(small_u);
  const __m256d ka = _mm256_set1_pd(k1), kb = _mm256_set1_pd(k2);
  const __m256d p1 = _mm256_set1_pd(b1_k1), p2 = _mm256_set1_pd(b1_k2);
  const __m256d q1 = _mm256_set1_pd(b2_k1), q2 = _mm256_set1_pd(b2_k2);
  __m256d acc = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + kLanes <= u.size(); i += kLanes) {
    const __m256d x = _mm256_loadu_pd(&u[i]);
    const __m256d small = _mm256_cmp_pd(_mm256_andnot_pd(sign, x), threshold, _CMP_LT_OQ);
    const __m256d v = _mm256_blendv_pd(potential_factored(x, ka, kb), potential(x, ka, kb), small);
    const __m256d v1 = _mm256_blendv_pd(potential_factored(x, p1, p2), potential(x, p1, p2), small);
    const __m256d v2 = _mm256_blendv_pd(potential_factored(x, q1, q2), potential(x, q1, q2), small);
    acc = _mm256_min_pd(acc, _mm256_sub_pd(v, _mm256_min_pd(v1, v2)));
  }
  double slack = horizontal_min(acc);
  if (i < u.size())
    slack = std::min(slack, scalar::potential_min_slack(u.subspan(i), k1, k2, b1_k1, b1_k2,
                                                        b2_k1, b2_k2, small_u));
  return slack;
}

}  // namespace layerbound::kernels::avx2
