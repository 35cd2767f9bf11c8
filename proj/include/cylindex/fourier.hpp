#pragma once

#include <array>
#include <map>
#include <utility>

#include "cylindex/core.hpp"

namespace cylindex {

enum class BaseManifold { Point, Circle };

constexpr std::string_view to_string(BaseManifold b) { return b == BaseManifold::Point ? "point" : "circle"; }

/// Lattice dimension of the boundary manifold S¹×B.
constexpr int lattice_dimension(BaseManifold b) { return b == BaseManifold::Point ? 1 : 2; }

/// Matrix-valued trigonometric polynomial a(θ,x) = Σ â(p,q)·e^{i(pθ+qx)}.
/// For BaseManifold::Point the q index is always 0.
class PeriodicFunction {
 public:
  using Key = std::pair<int, int>;

  PeriodicFunction(BaseManifold base, int k);

  static PeriodicFunction constant(BaseManifold base, const Matrix& value);
  static PeriodicFunction zero(BaseManifold base, int k) { return PeriodicFunction(base, k); }

  /// Adds c to the coefficient at (p, q).
  PeriodicFunction& add(int p, int q, const Matrix& c);
  PeriodicFunction& add(int p, int q, Scalar c) { return add(p, q, Matrix::Identity(k_, k_) * c); }

  Matrix operator()(double theta, double x = 0.0) const;

  /// Zero matrix when (p, q) is outside the stored support.
  Matrix coefficient(int p, int q) const;

  const std::map<Key, Matrix>& coeffs() const { return coeffs_; }
  BaseManifold base() const { return base_; }
  int k() const { return k_; }
  int bandwidth() const;
  bool is_zero() const;

  /// Pointwise conjugate transpose a*(θ,x).
  PeriodicFunction adjoint() const;

  PeriodicFunction& operator+=(const PeriodicFunction& other);
  friend PeriodicFunction operator+(PeriodicFunction a, const PeriodicFunction& b) { return a += b; }
  friend PeriodicFunction operator*(Scalar s, PeriodicFunction a);
  /// Pointwise matrix product (Fourier convolution).
  friend PeriodicFunction operator*(const PeriodicFunction& a, const PeriodicFunction& b);

 private:
  BaseManifold base_;
  int k_;
  std::map<Key, Matrix> coeffs_;
};

/// Matrix-valued trigonometric polynomial on T²×S¹ (or S¹×S¹ for a point base):
///   a(θ, x, ψ) = Σ c(p,q,r)·e^{i(pθ+qx+rψ)},  (τ, ξ) = (cos ψ, sin ψ).
/// This is the working representation of zero-order symbols on the cosphere
/// bundle of S¹×B. For a point base only ψ ∈ {0, π} (τ = ±1) is meaningful.
class FourierSymbol {
 public:
  using Key = std::array<int, 3>;

  FourierSymbol(BaseManifold base, int k);

  static FourierSymbol constant(BaseManifold base, const Matrix& value);

  FourierSymbol& add(int p, int q, int r, const Matrix& c);

  Matrix operator()(double theta, double x, double psi) const;

  /// Fourier coefficient in the base variables at (p, q), for the fixed fiber angle ψ.
  Matrix fiber_coefficient(int p, int q, double psi) const;

  const std::map<Key, Matrix>& coeffs() const { return coeffs_; }
  BaseManifold base() const { return base_; }
  int k() const { return k_; }
  /// max(|p|, |q|) over stored coefficients.
  int bandwidth() const;

  FourierSymbol adjoint() const;
  /// Drops coefficients with norm ≤ rel_tol·(largest coefficient norm).
  FourierSymbol pruned(double rel_tol) const;

  friend FourierSymbol operator*(const FourierSymbol& a, const FourierSymbol& b);
  friend FourierSymbol operator+(const FourierSymbol& a, const FourierSymbol& b);
  friend FourierSymbol operator*(Scalar s, const FourierSymbol& a);

 private:
  BaseManifold base_;
  int k_;
  std::map<Key, Matrix> coeffs_;
};

}  // namespace cylindex
