#pragma once

#include <array>

#include "cylindex/fourier.hpp"

namespace cylindex {

/// Samples of a k×k symbol on the uniform grid of T²×S¹,
///   a(θ_i, x_j, ψ_l),  θ_i = 2πi/n_θ, x_j = 2πj/n_x, ψ_l = 2πl/n_ψ,
/// where (τ, ξ) = (cos ψ, sin ψ) parametrizes the cosphere fiber.
///
/// Storage is one column of length k² (column-major k×k) per grid point,
/// points ordered with ψ fastest.
class SymbolGrid3 {
 public:
  SymbolGrid3(std::array<int, 3> resolution, int k);

  const std::array<int, 3>& resolution() const { return res_; }
  int k() const { return k_; }
  Eigen::Index points() const { return data_.cols(); }

  Eigen::Index index(int i, int j, int l) const { return (static_cast<Eigen::Index>(i) * res_[1] + j) * res_[2] + l; }

  Eigen::Map<Matrix> at(int i, int j, int l) { return {data_.col(index(i, j, l)).data(), k_, k_}; }
  Eigen::Map<const Matrix> at(int i, int j, int l) const { return {data_.col(index(i, j, l)).data(), k_, k_}; }

  /// k² × points raw storage.
  Matrix& data() { return data_; }
  const Matrix& data() const { return data_; }

 private:
  std::array<int, 3> res_;
  int k_;
  Matrix data_;
};

/// Replaces every line of samples along `axis` (0 = θ, 1 = x, 2 = ψ) by op · line.
void apply_along_axis(Matrix& data, const std::array<int, 3>& resolution, int axis, const Matrix& op);

/// Samples a circle-base symbol on the grid.
SymbolGrid3 sample(const FourierSymbol& symbol, std::array<int, 3> resolution);

/// Trigonometric interpolant of the grid samples (Nyquist modes split evenly),
/// with coefficients of relative norm ≤ prune_tol dropped.
FourierSymbol interpolate(const SymbolGrid3& grid, double prune_tol = 1e-13);

}  // namespace cylindex
