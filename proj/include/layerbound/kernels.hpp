#pragma once

// Data-parallel inner loops of the transverse solvers and the bounds checks.
//
// Every kernel has a portable scalar reference in kernels::scalar and, on
// x86-64, an AVX2 variant in kernels::avx2. The unqualified entry points
// dispatch once per process on the detected instruction set. Element-wise
// kernels are bit-identical across variants (no FMA contraction, same
// operation order); reductions differ only in summation order.

#include <cstddef>
#include <span>

namespace layerbound::kernels {

/// Per-element integrals of the P1 finite-element pencil with weight
/// w(u) = (1 - k1 u)(1 - k2 u), integrated exactly on [x[e], x[e+1]].
struct ElementIntegrals {
  std::span<double> stiffness;  ///< (int_e w) / h_e^2
  std::span<double> mass_ll;    ///< int_e w N_l^2
  std::span<double> mass_lr;    ///< int_e w N_l N_r
  std::span<double> mass_rr;    ///< int_e w N_r^2
};

/// Numerator and denominator of the weighted Rayleigh quotient.
struct QuotientParts {
  double energy = 0.0;  ///< int |psi'|^2 w
  double norm = 0.0;    ///< int |psi|^2 w
};

enum class Isa { scalar, avx2 };

/// Instruction set picked by the dispatcher on this machine.
Isa active_isa() noexcept;
const char* isa_name(Isa isa) noexcept;

// nodes.size() == out.*.size() + 1 for the element kernels.
void element_integrals(std::span<const double> nodes, double k1, double k2,
                       const ElementIntegrals& out);

QuotientParts weighted_quotient_parts(std::span<const double> nodes,
                                      std::span<const double> values,
                                      double k1, double k2);

/// V(u; k1, k2) = -(k1 - k2)^2 / (4 (1 - k1 u)^2 (1 - k2 u)^2), unfactored.
void potential_values(std::span<const double> u, double k1, double k2,
                      std::span<double> out);

/// min over u of V(u; k1, k2) - min{V(u; b1), V(u; b2)}. Uses the factored
/// form -(1/(4u^2)) [1/(1 - k1 u) - 1/(1 - k2 u)]^2 for |u| >= small_u and the
/// unfactored one below.
double potential_min_slack(std::span<const double> u, double k1, double k2,
                           double b1_k1, double b1_k2, double b2_k1,
                           double b2_k2, double small_u);

namespace scalar {
void element_integrals(std::span<const double> nodes, double k1, double k2,
                       const ElementIntegrals& out);
QuotientParts weighted_quotient_parts(std::span<const double> nodes,
                                      std::span<const double> values,
                                      double k1, double k2);
void potential_values(std::span<const double> u, double k1, double k2,
                      std::span<double> out);
double potential_min_slack(std::span<const double> u, double k1, double k2,
                           double b1_k1, double b1_k2, double b2_k1,
                           double b2_k2, double small_u);
}  // namespace scalar

#if defined(LAYERBOUND_HAVE_AVX2)
namespace avx2 {
void element_integrals(std::span<const double> nodes, double k1, double k2,
                       const ElementIntegrals& out);
QuotientParts weighted_quotient_parts(std::span<const double> nodes,
                                      std::span<const double> values,
                                      double k1, double k2);
void potential_values(std::span<const double> u, double k1, double k2,
                      std::span<double> out);
double potential_min_slack(std::span<const double> u, double k1, double k2,
                           double b1_k1, double b1_k2, double b2_k1,
                           double b2_k2, double small_u);
}  // namespace avx2
#endif

}  // namespace layerbound::kernels
