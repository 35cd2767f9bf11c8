#pragma once

#include <functional>
#include <vector>

#include "cylindex/core.hpp"

namespace cylindex {

/// n samples of a matrix loop, sample i taken at θ = 2πi/n.
struct LoopSample {
  std::vector<Matrix> values;

  static LoopSample from_function(const std::function<Matrix(double)>& f, int n);

  int size() const { return static_cast<int>(values.size()); }
  int k() const { return values.empty() ? 0 : static_cast<int>(values.front().rows()); }
};

struct WindingOptions {
  double invertibility_tol = 1e-10;
  /// Accumulated phase must lie within closure_tol·2π of a multiple of 2π.
  double closure_tol = 1e-6;
};

/// Degree of θ ↦ det(values(θ)), obtained by unwrapping the determinant phase.
///
/// Throws SingularSample, PhaseJump (a neighbour increment of |Δarg| ≥ π/2;
/// sample more finely) or NonClosure.
int winding_number(const LoopSample& loop, const WindingOptions& options = {});

/// Noether index of a zero-order operator on S¹ whose symbol restricts to
/// f_minus on the τ = −1 copy and f_plus on the τ = +1 copy:
///   winding_number(f_minus) − winding_number(f_plus).
/// With this orientation the Toeplitz-type operator with symbol 1 on τ = −1
/// and z on τ = +1 has index −1, as the finite-section oracle confirms.
int noether_index(const LoopSample& f_minus, const LoopSample& f_plus, const WindingOptions& options = {});

}  // namespace cylindex
