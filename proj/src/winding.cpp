#include "cylindex/winding.hpp"

#include <cmath>

namespace cylindex {

LoopSample LoopSample::from_function(const std::function<Matrix(double)>& f, int n) {
  LoopSample loop;
  loop.values.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) loop.values.push_back(f(grid_angle(i, n)));
  return loop;
}

int winding_number(const LoopSample& loop, const WindingOptions& options) {
  const int n = loop.size();
  if (n < 16) fail(ErrorKind::InvalidArgument, "a loop needs at least 16 samples");
  const int k = loop.k();
  std::vector<Scalar> det(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Matrix& v = loop.values[static_cast<std::size_t>(i)];
    if (v.rows() != k || v.cols() != k) fail(ErrorKind::MatrixSizeMismatch, "loop samples differ in size");
    if (smallest_singular_value(v) <= options.invertibility_tol)
      fail(ErrorKind::SingularSample, "loop sample " + std::to_string(i) + " is not invertible");
    det[static_cast<std::size_t>(i)] = v.determinant();
  }

  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const Scalar ratio = det[static_cast<std::size_t>((i + 1) % n)] / det[static_cast<std::size_t>(i)];
    const double step = std::arg(ratio);
    if (std::abs(step) >= kPi / 2)
      fail(ErrorKind::PhaseJump, "determinant phase jumps by " + std::to_string(step) + " after sample " +
                                     std::to_string(i) + "; sample more finely");
    total += step;
  }
  const double turns = total / kTwoPi;
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > options.closure_tol)
    fail(ErrorKind::NonClosure, "accumulated phase " + std::to_string(turns) + " turns is not an integer");
  return static_cast<int>(rounded);
}

int noether_index(const LoopSample& f_minus, const LoopSample& f_plus, const WindingOptions& options) {
  if (f_minus.k() != f_plus.k()) fail(ErrorKind::MatrixSizeMismatch, "loops have different matrix sizes");
  return winding_number(f_minus, options) - winding_number(f_plus, options);
}

}  // namespace cylindex
