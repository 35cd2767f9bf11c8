#include "cylindex/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cylindex {

namespace {

Scalar phase(double angle) { return std::polar(1.0, angle); }

template <typename Map>
void accumulate(Map& coeffs, const typename Map::key_type& key, const Matrix& c) {
  auto it = coeffs.find(key);
  if (it == coeffs.end()) {
    coeffs.emplace(key, c);
  } else {
    it->second += c;
  }
}

void check_k(int k) {
  if (k <= 0) fail(ErrorKind::InvalidArgument, "matrix size k must be positive");
}

}  // namespace

// ---------------------------------------------------------------------------
// PeriodicFunction

PeriodicFunction::PeriodicFunction(BaseManifold base, int k) : base_(base), k_(k) { check_k(k); }

PeriodicFunction PeriodicFunction::constant(BaseManifold base, const Matrix& value) {
  if (value.rows() != value.cols()) fail(ErrorKind::MatrixSizeMismatch, "coefficient must be square");
  PeriodicFunction f(base, static_cast<int>(value.rows()));
  f.add(0, 0, value);
  return f;
}

PeriodicFunction& PeriodicFunction::add(int p, int q, const Matrix& c) {
  if (c.rows() != k_ || c.cols() != k_) fail(ErrorKind::MatrixSizeMismatch, "coefficient is not k×k");
  if (base_ == BaseManifold::Point && q != 0) fail(ErrorKind::InvalidArgument, "point base requires q = 0");
  accumulate(coeffs_, Key{p, q}, c);
  return *this;
}

Matrix PeriodicFunction::operator()(double theta, double x) const {
  Matrix out = Matrix::Zero(k_, k_);
  for (const auto& [key, c] : coeffs_) out += c * phase(key.first * theta + key.second * x);
  return out;
}

Matrix PeriodicFunction::coefficient(int p, int q) const {
  auto it = coeffs_.find(Key{p, q});
  return it == coeffs_.end() ? Matrix::Zero(k_, k_) : it->second;
}

int PeriodicFunction::bandwidth() const {
  int b = 0;
  for (const auto& [key, c] : coeffs_) b = std::max({b, std::abs(key.first), std::abs(key.second)});
  return b;
}

bool PeriodicFunction::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& kv) { return kv.second.isZero(0.0); });
}

PeriodicFunction PeriodicFunction::adjoint() const {
  PeriodicFunction out(base_, k_);
  for (const auto& [key, c] : coeffs_) out.add(-key.first, -key.second, c.adjoint());
  return out;
}

PeriodicFunction& PeriodicFunction::operator+=(const PeriodicFunction& other) {
  if (other.k_ != k_ || other.base_ != base_) fail(ErrorKind::MatrixSizeMismatch, "adding incompatible functions");
  for (const auto& [key, c] : other.coeffs_) accumulate(coeffs_, key, c);
  return *this;
}

PeriodicFunction operator*(Scalar s, PeriodicFunction a) {
  for (auto& [key, c] : a.coeffs_) c *= s;
  return a;
}

PeriodicFunction operator*(const PeriodicFunction& a, const PeriodicFunction& b) {
  if (a.k_ != b.k_ || a.base_ != b.base_) fail(ErrorKind::MatrixSizeMismatch, "multiplying incompatible functions");
  PeriodicFunction out(a.base_, a.k_);
  for (const auto& [ka, ca] : a.coeffs_)
    for (const auto& [kb, cb] : b.coeffs_) out.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
  return out;
}

// ---------------------------------------------------------------------------
// FourierSymbol

FourierSymbol::FourierSymbol(BaseManifold base, int k) : base_(base), k_(k) { check_k(k); }

FourierSymbol FourierSymbol::constant(BaseManifold base, const Matrix& value) {
  FourierSymbol s(base, static_cast<int>(value.rows()));
  s.add(0, 0, 0, value);
  return s;
}

FourierSymbol& FourierSymbol::add(int p, int q, int r, const Matrix& c) {
  if (c.rows() != k_ || c.cols() != k_) fail(ErrorKind::MatrixSizeMismatch, "coefficient is not k×k");
  if (base_ == BaseManifold::Point && q != 0) fail(ErrorKind::InvalidArgument, "point base requires q = 0");
  accumulate(coeffs_, Key{p, q, r}, c);
  return *this;
}

Matrix FourierSymbol::operator()(double theta, double x, double psi) const {
  Matrix out = Matrix::Zero(k_, k_);
  for (const auto& [key, c] : coeffs_) out += c * phase(key[0] * theta + key[1] * x + key[2] * psi);
  return out;
}

Matrix FourierSymbol::fiber_coefficient(int p, int q, double psi) const {
  Matrix out = Matrix::Zero(k_, k_);
  auto it = coeffs_.lower_bound(Key{p, q, std::numeric_limits<int>::min()});
  for (; it != coeffs_.end() && it->first[0] == p && it->first[1] == q; ++it) out += it->second * phase(it->first[2] * psi);
  return out;
}

int FourierSymbol::bandwidth() const {
  int b = 0;
  for (const auto& [key, c] : coeffs_) b = std::max({b, std::abs(key[0]), std::abs(key[1])});
  return b;
}

FourierSymbol FourierSymbol::adjoint() const {
  FourierSymbol out(base_, k_);
  for (const auto& [key, c] : coeffs_) out.add(-key[0], -key[1], -key[2], c.adjoint());
  return out;
}

FourierSymbol FourierSymbol::pruned(double rel_tol) const {
  double largest = 0.0;
  for (const auto& [key, c] : coeffs_) largest = std::max(largest, c.norm());
  FourierSymbol out(base_, k_);
  for (const auto& [key, c] : coeffs_)
    if (c.norm() > rel_tol * largest) out.coeffs_.emplace(key, c);
  return out;
}

FourierSymbol operator*(const FourierSymbol& a, const FourierSymbol& b) {
  if (a.k_ != b.k_ || a.base_ != b.base_) fail(ErrorKind::MatrixSizeMismatch, "multiplying incompatible symbols");
  FourierSymbol out(a.base_, a.k_);
  for (const auto& [ka, ca] : a.coeffs_)
    for (const auto& [kb, cb] : b.coeffs_) out.add(ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2], ca * cb);
  return out;
}

FourierSymbol operator+(const FourierSymbol& a, const FourierSymbol& b) {
  if (a.k_ != b.k_ || a.base_ != b.base_) fail(ErrorKind::MatrixSizeMismatch, "adding incompatible symbols");
  FourierSymbol out = a;
  for (const auto& [key, c] : b.coeffs_) out.add(key[0], key[1], key[2], c);
  return out;
}

FourierSymbol operator*(Scalar s, const FourierSymbol& a) {
  FourierSymbol out = a;
  for (auto& [key, c] : out.coeffs_) c *= s;
  return out;
}

}  // namespace cylindex
