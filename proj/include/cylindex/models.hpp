#pragma once

#include <random>

#include "cylindex/symbol_core.hpp"

namespace cylindex::models {

/// Pauli matrices σ₁, σ₂, σ₃; σ₀ = I.
Matrix pauli(int i);

// -- generator families (coefficients equal on both sides) -------------------

/// Multiplication by e^{ipθ}, order 0.
OperatorSpec multiplier_spec(BaseManifold base, int p = 1);
/// Λ itself: order 1 with the single term (j, α, λ) = (0, 0, 1). Principal symbol 0.
OperatorSpec bessel_spec(BaseManifold base);
/// D_t·Λ⁻¹ as an order-1 spec: term (1, 0) ↦ 1, symbol τ.
OperatorSpec time_derivative_spec(BaseManifold base);
/// Terms (1, 0) ↦ 1 and (0, 1) ↦ c(x): symbol τ + c(x)ξ (circle base).
OperatorSpec transversal_spec(const PeriodicFunction& c);

// -- calibration specs -------------------------------------------------------

/// Point base, order 1, minus side trivial. On the plus side the principal
/// symbol is 1 on τ = −1 and e^{iθ} on τ = +1; δ₁ = (0, −1).
OperatorSpec toeplitz_calibration_spec();

/// Circle base, scalar, symbol τ + iξ with a lower-order shift: the boundary
/// operators (D_θ + iD_x + shift)Λ⁻¹ are invertible for shift ∉ ℤ.
OperatorSpec shifted_dirac_spec(double shift = 0.5);

/// a = q₀I + i(q₁σ₁ + q₂σ₂ + q₃σ₃) with q = (mass + cos θ + cos x + τ, sin θ, sin x, ξ).
/// For 1 < mass < 3 the normalized map T²×S¹ → S³ has degree one; the
/// quantized operator has index −1.
FourierSymbol su2_symbol(double mass = 2.0);

/// Circle base, k = 2, order 1: minus side trivial, plus side with principal
/// symbol su2_symbol(mass). δ₁ = (0, −1).
OperatorSpec su2_spec(double mass = 2.0);

// -- random symbols ----------------------------------------------------------

/// Random trigonometric polynomial with |p|, |q| ≤ bandwidth and Frobenius
/// coefficient norms summing to `scale` (so its sup norm is at most `scale`).
PeriodicFunction random_periodic(BaseManifold base, int k, int bandwidth, double scale, std::mt19937_64& rng);

/// I + h with h a random symbol of sup norm ≤ scale < 1, hence invertible
/// and homotopic to the identity (index 0). Frequencies |p|, |q| ≤ base_bandwidth,
/// |r| ≤ fiber_bandwidth.
FourierSymbol random_near_identity(int k, int base_bandwidth, int fiber_bandwidth, double scale, std::mt19937_64& rng);

/// h·U^e·h′ on T²×S¹ with U = su2_symbol() (U^{−1} replaced by U*) and h, h′
/// random near-identity factors. Its index is −e.
FourierSymbol random_degree_symbol(int e, std::mt19937_64& rng, int base_bandwidth = 1, int fiber_bandwidth = 1,
                                   double scale = 0.3);

/// Random invertible scalar symbol e^{i(aθ + bx)}·(1 + h), a, b ∈ {−1, 0, 1}, |h| ≤ scale < 1.
FourierSymbol random_scalar_symbol(std::mt19937_64& rng, int bandwidth = 2, double scale = 0.6);

}  // namespace cylindex::models
