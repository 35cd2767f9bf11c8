#pragma once

// Test-side reference computations. They share no code with the library's
// assembly or SVD paths: coefficients come from trapezoid sums of pointwise
// evaluations, kernels from column-pivoted QR.

#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include <Eigen/Dense>

namespace ref {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
inline constexpr double pi = 3.14159265358979323846;

/// f(θ, x, τ, ξ) → k×k.
using SymbolFn = std::function<Mat(double, double, double, double)>;

/// Fourier coefficient at (p, q) of (θ, x) ↦ f(θ, x, τ, ξ), by an nq-point
/// trapezoid sum per periodic variable (exact for trigonometric polynomials of
/// degree < nq − |p|).
inline Mat coefficient(const SymbolFn& f, int dim, int k, int p, int q, double tau, double xi, int nq) {
  Mat c = Mat::Zero(k, k);
  const int ny = dim == 1 ? 1 : nq;
  for (int a = 0; a < nq; ++a)
    for (int b = 0; b < ny; ++b) {
      const double th = 2 * pi * a / nq;
      const double x = dim == 1 ? 0.0 : 2 * pi * b / ny;
      c += f(th, x, tau, xi) * std::polar(1.0 / (nq * ny), -(p * th + q * x));
    }
  return c;
}

struct Tall {
  Mat a;       ///< outer rows × inner columns
  Mat a_star;  ///< adjoint compression, outer × inner
};

/// Zero-order quantization on the window of radius r with halo h, assembled
/// mode by mode: column (m, n) gets the coefficients of f(·, ·, (m, n)/|(m, n)|).
inline Tall quantize(const SymbolFn& f, int dim, int k, int r, int h, int nq = 16) {
  const int ro = r + h;
  const int so = 2 * ro + 1;
  const int outer_modes = dim == 1 ? so : so * so;
  auto outer_index = [&](int m, int n) { return dim == 1 ? (m + ro) : (m + ro) * so + (n + ro); };
  Mat full = Mat::Zero(outer_modes * k, outer_modes * k);
  std::vector<int> inner;
  for (int m = -ro; m <= ro; ++m)
    for (int n = (dim == 1 ? 0 : -ro); n <= (dim == 1 ? 0 : ro); ++n) {
      double tau = 1.0, xi = 0.0;
      if (dim == 1) {
        tau = m >= 0 ? 1.0 : -1.0;
      } else if (m != 0 || n != 0) {
        const double len = std::hypot(double(m), double(n));
        tau = m / len;
        xi = n / len;
      }
      const int col = outer_index(m, n);
      if (std::abs(m) <= r && std::abs(n) <= r)
        for (int c = 0; c < k; ++c) inner.push_back(col * k + c);
      for (int p = -h; p <= h; ++p)
        for (int q = (dim == 1 ? 0 : -h); q <= (dim == 1 ? 0 : h); ++q) {
          if (std::abs(m + p) > ro || std::abs(n + q) > ro) continue;
          full.block(outer_index(m + p, n + q) * k, col * k, k, k) += coefficient(f, dim, k, p, q, tau, xi, nq);
        }
    }
  Tall t;
  t.a = full(Eigen::all, inner);
  t.a_star = full(inner, Eigen::all).adjoint();
  return t;
}

/// Nullity by column-pivoted QR: columns minus the number of |R_ii| above
/// rel_tol·max|R_ii|.
inline int nullity(const Mat& tall, double rel_tol) {
  Eigen::ColPivHouseholderQR<Mat> qr(tall);
  qr.setThreshold(rel_tol);
  return static_cast<int>(tall.cols() - qr.rank());
}

inline int index(const Tall& t, double rel_tol) { return nullity(t.a, rel_tol) - nullity(t.a_star, rel_tol); }

/// Degree-one SU(2) symbol, written out pointwise.
inline Mat su2(double th, double x, double tau, double xi, double mass = 2.0) {
  const cd i(0, 1);
  const double q0 = mass + std::cos(th) + std::cos(x) + tau;
  const double q1 = std::sin(th), q2 = std::sin(x), q3 = xi;
  Mat a(2, 2);
  // q0 I + i(q1 σ1 + q2 σ2 + q3 σ3)
  a(0, 0) = q0 + i * q3;
  a(1, 1) = q0 - i * q3;
  a(0, 1) = i * q1 + q2;
  a(1, 0) = i * q1 - q2;
  return a;
}

inline Mat scalar(cd z) { return Mat::Constant(1, 1, z); }

}  // namespace ref
