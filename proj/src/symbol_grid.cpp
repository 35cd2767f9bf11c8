#include "cylindex/symbol_grid.hpp"

#include <cmath>
#include <vector>

namespace cylindex {

SymbolGrid3::SymbolGrid3(std::array<int, 3> resolution, int k) : res_(resolution), k_(k) {
  for (int n : res_)
    if (n <= 0) fail(ErrorKind::InvalidArgument, "grid resolutions must be positive");
  if (k <= 0) fail(ErrorKind::InvalidArgument, "matrix size k must be positive");
  data_ = Matrix::Zero(static_cast<Eigen::Index>(k) * k,
                       static_cast<Eigen::Index>(res_[0]) * res_[1] * res_[2]);
}

SymbolGrid3 sample(const FourierSymbol& symbol, std::array<int, 3> resolution) {
  if (symbol.base() != BaseManifold::Circle) fail(ErrorKind::DimensionMismatch, "grid sampling needs a circle base");
  SymbolGrid3 grid(resolution, symbol.k());
  const auto [nt, nx, np] = resolution;

  // Separable evaluation: phases per axis are tabulated once.
  auto table = [](int n, int freq) {
    std::vector<Scalar> t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = std::polar(1.0, freq * grid_angle(i, n));
    return t;
  };
  for (const auto& [key, c] : symbol.coeffs()) {
    const auto et = table(nt, key[0]);
    const auto ex = table(nx, key[1]);
    const auto ep = table(np, key[2]);
    const Eigen::Map<const Vector> cv(c.data(), c.size());
    for (int i = 0; i < nt; ++i)
      for (int j = 0; j < nx; ++j) {
        const Scalar eij = et[static_cast<std::size_t>(i)] * ex[static_cast<std::size_t>(j)];
        for (int l = 0; l < np; ++l) grid.data().col(grid.index(i, j, l)) += (eij * ep[static_cast<std::size_t>(l)]) * cv;
      }
  }
  return grid;
}

void apply_along_axis(Matrix& data, const std::array<int, 3>& resolution, int axis, const Matrix& op) {
  const int n = resolution[static_cast<std::size_t>(axis)];
  if (op.rows() != n || op.cols() != n) fail(ErrorKind::DimensionMismatch, "axis operator has the wrong size");
  const Eigen::Index stride =
      axis == 0 ? Eigen::Index(resolution[1]) * resolution[2] : axis == 1 ? Eigen::Index(resolution[2]) : 1;
  Matrix line(data.rows(), n);
  for (Eigen::Index first = 0; first < data.cols(); ++first) {
    if ((first / stride) % n != 0) continue;
    for (int a = 0; a < n; ++a) line.col(a) = data.col(first + a * stride);
    const Matrix out = line * op.transpose();
    for (int a = 0; a < n; ++a) data.col(first + a * stride) = out.col(a);
  }
}

namespace {

Matrix dft_matrix(int n) {
  Matrix f(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) f(a, b) = std::polar(1.0 / n, -kTwoPi * a * b / n);
  return f;
}

int signed_frequency(int a, int n) { return a <= n / 2 ? a : a - n; }

}  // namespace

FourierSymbol interpolate(const SymbolGrid3& grid, double prune_tol) {
  const auto& res = grid.resolution();
  Matrix data = grid.data();
  for (int axis = 0; axis < 3; ++axis) apply_along_axis(data, res, axis, dft_matrix(res[static_cast<std::size_t>(axis)]));

  const int k = grid.k();
  FourierSymbol out(BaseManifold::Circle, k);
  for (int a = 0; a < res[0]; ++a)
    for (int b = 0; b < res[1]; ++b)
      for (int c = 0; c < res[2]; ++c) {
        const Eigen::Index col = (static_cast<Eigen::Index>(a) * res[1] + b) * res[2] + c;
        Matrix coeff = Eigen::Map<const Matrix>(data.col(col).data(), k, k);
        // A Nyquist mode is split between ±n/2 so the interpolant stays real-symmetric.
        std::array<int, 3> freq{signed_frequency(a, res[0]), signed_frequency(b, res[1]), signed_frequency(c, res[2])};
        std::array<bool, 3> nyquist{res[0] % 2 == 0 && 2 * a == res[0], res[1] % 2 == 0 && 2 * b == res[1],
                                    res[2] % 2 == 0 && 2 * c == res[2]};
        std::vector<std::array<int, 3>> targets{freq};
        for (int axis = 0; axis < 3; ++axis) {
          if (!nyquist[static_cast<std::size_t>(axis)]) continue;
          const std::size_t count = targets.size();
          for (std::size_t t = 0; t < count; ++t) {
            auto mirrored = targets[t];
            mirrored[static_cast<std::size_t>(axis)] = -mirrored[static_cast<std::size_t>(axis)];
            targets.push_back(mirrored);
          }
        }
        coeff /= static_cast<double>(targets.size());
        for (const auto& t : targets) out.add(t[0], t[1], t[2], coeff);
      }
  return out.pruned(prune_tol);
}

}  // namespace cylindex
