#include "layerbound/kernels.hpp"

namespace layerbound::kernels {
namespace {

Isa detect() noexcept {
#if defined(LAYERBOUND_HAVE_AVX2)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return Isa::avx2;
#endif
  return Isa::scalar;
}

}  // namespace

Isa active_isa() noexcept {
  static const Isa isa = detect();
  return isa;
}

const char* isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::avx2:
      return "avx2";
    case Isa::scalar:
      break;
  }
  return "scalar";
}

#if defined(LAYERBOUND_HAVE_AVX2)
#define LAYERBOUND_DISPATCH(fn, ...) \
  (active_isa() == Isa::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define LAYERBOUND_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

void element_integrals(std::span<const double> nodes, double k1, double k2,
                       const ElementIntegrals& out) {
  LAYERBOUND_DISPATCH(element_integrals, nodes, k1, k2, out);
}

QuotientParts weighted_quotient_parts(std::span<const double> nodes,
                                      std::span<const double> values,
                                      double k1, double k2) {
  return LAYERBOUND_DISPATCH(weighted_quotient_parts, nodes, values, k1, k2);
}

void potential_values(std::span<const double> u, double k1, double k2,
                      std::span<double> out) {
  LAYERBOUND_DISPATCH(potential_values, u, k1, k2, out);
}

double potential_min_slack(std::span<const double> u, double k1, double k2,
                           double b1_k1, double b1_k2, double b2_k1,
                           double b2_k2, double small_u) {
  return LAYERBOUND_DISPATCH(potential_min_slack, u, k1, k2, b1_k1, b1_k2, b2_k1,
                             b2_k2, small_u);
}

#undef LAYERBOUND_DISPATCH

}  // namespace layerbound::kernels
