#include "cylindex/fedosov.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace cylindex {

namespace {

// Pairwise summation: fixed evaluation order, small rounding growth.
Scalar pairwise_sum(const Vector& v, Eigen::Index begin, Eigen::Index end) {
  if (end - begin <= 16) {
    Scalar s = 0.0;
    for (Eigen::Index i = begin; i < end; ++i) s += v(i);
    return s;
  }
  const Eigen::Index mid = begin + (end - begin) / 2;
  return pairwise_sum(v, begin, mid) + pairwise_sum(v, mid, end);
}

}  // namespace

Eigen::MatrixXd spectral_derivative_matrix(int n) {
  if (n < 2) fail(ErrorKind::InvalidArgument, "spectral differentiation needs at least 2 points");
  const double h = kTwoPi / n;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double sign = ((i - j) % 2 == 0) ? 1.0 : -1.0;
      const double half = 0.5 * (i - j) * h;
      // even n: cotangent kernel (Nyquist derivative dropped); odd n: cosecant kernel
      d(i, j) = n % 2 == 0 ? 0.5 * sign / std::tan(half) : 0.5 * sign / std::sin(half);
    }
  return d;
}

double aliasing_ratio(const SymbolGrid3& grid) {
  const auto& res = grid.resolution();
  double top = 0.0;
  double total = 0.0;
  double plain = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    const int n = res[static_cast<std::size_t>(axis)];
    Matrix f(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) f(a, b) = std::polar(1.0 / n, -kTwoPi * a * b / n);
    Matrix spectrum = grid.data();
    apply_along_axis(spectrum, res, axis, f);
    plain += spectrum.squaredNorm();
    const Eigen::Index stride =
        axis == 0 ? Eigen::Index(res[1]) * res[2] : axis == 1 ? Eigen::Index(res[2]) : 1;
    for (Eigen::Index col = 0; col < spectrum.cols(); ++col) {
      const int a = static_cast<int>((col / stride) % n);
      const int freq = a <= n / 2 ? a : a - n;
      const double energy = static_cast<double>(freq) * freq * spectrum.col(col).squaredNorm();
      total += energy;
      if (3 * std::abs(freq) > n) top += energy;
    }
  }
  // rounding noise on a (nearly) constant grid is not aliasing
  const double floor = 1e-20 * plain;
  return top / std::max(total, floor);
}

Vector odd_chern_density(const SymbolGrid3& grid, const FedosovOptions& options) {
  const auto& res = grid.resolution();
  for (int n : res)
    if (n < 16) fail(ErrorKind::InvalidArgument, "symbol grids need at least 16 points per axis");
  const double ratio = aliasing_ratio(grid);
  if (ratio > options.aliasing_tol)
    fail(ErrorKind::AliasedGrid, "top-third spectral derivative energy fraction " + std::to_string(ratio) +
                                     " exceeds tolerance; use a finer grid");

  std::array<Matrix, 3> derivative;
  for (int axis = 0; axis < 3; ++axis) {
    derivative[static_cast<std::size_t>(axis)] = grid.data();
    apply_along_axis(derivative[static_cast<std::size_t>(axis)], res, axis,
                     spectral_derivative_matrix(res[static_cast<std::size_t>(axis)]).cast<Scalar>());
  }

  const int k = grid.k();
  Vector density(grid.points());
  std::array<Matrix, 3> w;
  for (Eigen::Index col = 0; col < grid.points(); ++col) {
    const Eigen::Map<const Matrix> a(grid.data().col(col).data(), k, k);
    if (smallest_singular_value(a) <= options.invertibility_tol)
      fail(ErrorKind::SingularSample, "symbol is not invertible at grid point " + std::to_string(col));
    const Eigen::PartialPivLU<Matrix> lu(a);
    for (std::size_t mu = 0; mu < 3; ++mu)
      w[mu] = lu.solve(Eigen::Map<const Matrix>(derivative[mu].col(col).data(), k, k));
    const auto& [t, x, p] = w;
    density(col) = (t * x * p).trace() + (x * p * t).trace() + (p * t * x).trace() - (t * p * x).trace() -
                   (p * x * t).trace() - (x * t * p).trace();
  }
  return density;
}

double odd_chern_integral(const SymbolGrid3& grid, const FedosovOptions& options) {
  const Vector density = odd_chern_density(grid, options);
  const auto& res = grid.resolution();
  const double cell = (kTwoPi / res[0]) * (kTwoPi / res[1]) * (kTwoPi / res[2]);
  return kOddChernConstant * cell * pairwise_sum(density, 0, density.size()).real();
}

int fedosov_index(const SymbolGrid3& grid, const FedosovOptions& options) {
  const double value = odd_chern_integral(grid, options);
  const double rounded = std::round(value);
  if (std::abs(value - rounded) > options.integer_tol)
    fail(ErrorKind::NonIntegerResult, "odd Chern integral " + std::to_string(value) + " is not near an integer");
  return static_cast<int>(rounded);
}

}  // namespace cylindex
