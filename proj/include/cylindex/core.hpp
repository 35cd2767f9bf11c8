#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace cylindex {

using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Failure categories. Each one maps onto a CLI exit status via is_validation().
enum class ErrorKind {
  // validation
  SchemaError,
  InvalidArgument,
  NotElliptic,
  DimensionMismatch,
  MatrixSizeMismatch,
  SizeMismatch,
  WindowTooLarge,
  // numerical
  SingularSample,
  SingularSymbol,
  PhaseJump,
  NonClosure,
  AliasedGrid,
  NonIntegerResult,
  NoSpectralGap,
  Unstable,
  NotIdempotent,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotElliptic: return "NotElliptic";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::MatrixSizeMismatch: return "MatrixSizeMismatch";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::WindowTooLarge: return "WindowTooLarge";
    case ErrorKind::SingularSample: return "SingularSample";
    case ErrorKind::SingularSymbol: return "SingularSymbol";
    case ErrorKind::PhaseJump: return "PhaseJump";
    case ErrorKind::NonClosure: return "NonClosure";
    case ErrorKind::AliasedGrid: return "AliasedGrid";
    case ErrorKind::NonIntegerResult: return "NonIntegerResult";
    case ErrorKind::NoSpectralGap: return "NoSpectralGap";
    case ErrorKind::Unstable: return "Unstable";
    case ErrorKind::NotIdempotent: return "NotIdempotent";
  }
  return "Unknown";
}

constexpr bool is_validation(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SchemaError:
    case ErrorKind::InvalidArgument:
    case ErrorKind::NotElliptic:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::MatrixSizeMismatch:
    case ErrorKind::SizeMismatch:
    case ErrorKind::WindowTooLarge:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

/// Smallest singular value of a (small, dense) matrix.
template <typename Derived>
double smallest_singular_value(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

/// Uniform periodic grid point i of n on [0, 2π).
inline double grid_angle(int i, int n) { return kTwoPi * static_cast<double>(i) / static_cast<double>(n); }

}  // namespace cylindex
