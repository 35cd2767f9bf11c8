#pragma once

#include "cylindex/symbol_grid.hpp"

namespace cylindex {

/// Normalization of the odd Chern character 3-form. Together with the
/// orientation dθ∧dx∧dψ it makes the degree-1 SU(2) calibration symbol
/// integrate to the same index the finite-section oracle reports (−1).
inline constexpr double kOddChernConstant = -1.0 / (24.0 * kPi * kPi);

struct FedosovOptions {
  double invertibility_tol = 1e-8;
  /// Allowed fraction of spectral derivative energy in the top third of frequencies.
  double aliasing_tol = 1e-6;
  /// Largest |integral − nearest integer| accepted by fedosov_index.
  double integer_tol = 0.05;
};

/// Periodic spectral differentiation matrix on n equispaced points of [0, 2π).
Eigen::MatrixXd spectral_derivative_matrix(int n);

/// Fraction of spectral derivative energy carried by |κ| > n/3, over all three axes.
double aliasing_ratio(const SymbolGrid3& grid);

/// Pointwise 3-form coefficient Σ_{σ∈S₃} sgn(σ)·tr(ω_σ(θ) ω_σ(x) ω_σ(ψ)), ω = a⁻¹da,
/// before quadrature. Throws SingularSample / AliasedGrid.
Vector odd_chern_density(const SymbolGrid3& grid, const FedosovOptions& options = {});

/// kOddChernConstant · ∫_{T²×S¹} tr(ω∧ω∧ω) by the periodic trapezoidal rule.
double odd_chern_integral(const SymbolGrid3& grid, const FedosovOptions& options = {});

/// odd_chern_integral rounded to the nearest integer; NonIntegerResult when
/// the residual exceeds options.integer_tol.
int fedosov_index(const SymbolGrid3& grid, const FedosovOptions& options = {});

}  // namespace cylindex
