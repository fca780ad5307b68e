#include "opdisk/doubled.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace opdisk {

namespace {

// Blocks of products of block-diagonal carriers are diagonal up to exact
// zeros; dropping off-diagonal entries keeps commutative blocks well formed.
AlgebraElement make_block(const Algebra& algebra, const Matrix& block) {
  if (algebra.is_commutative()) {
    return {algebra, Matrix(block.diagonal().asDiagonal())};
  }
  return {algebra, block};
}

}  // namespace

// ---------------------------------------------------------------------------
// DoubledVector

DoubledVector::DoubledVector(const AlgebraElement& x1, const AlgebraElement& x2) : algebra_(x1.algebra()) {
  require_same_algebra(x1.algebra(), x2.algebra(), "DoubledVector");
  const int n = algebra_.dim();
  data_.resize(2 * n, n);
  data_.topRows(n) = x1.data();
  data_.bottomRows(n) = x2.data();
}

DoubledVector::DoubledVector(Algebra algebra, Matrix data) : algebra_(algebra), data_(std::move(data)) {
  if (data_.rows() != 2 * algebra_.dim() || data_.cols() != algebra_.dim()) {
    throw Error(ErrorCode::kAlgebraMismatch, "DoubledVector carrier has the wrong shape");
  }
}

DoubledVector DoubledVector::zero(const Algebra& algebra) {
  return {AlgebraElement::zero(algebra), AlgebraElement::zero(algebra)};
}

DoubledVector DoubledVector::e1(const Algebra& algebra) {
  return {AlgebraElement::identity(algebra), AlgebraElement::zero(algebra)};
}

DoubledVector DoubledVector::e2(const Algebra& algebra) {
  return {AlgebraElement::zero(algebra), AlgebraElement::identity(algebra)};
}

AlgebraElement DoubledVector::x1() const { return make_block(algebra_, data_.topRows(algebra_.dim())); }

AlgebraElement DoubledVector::x2() const { return make_block(algebra_, data_.bottomRows(algebra_.dim())); }

DoubledVector DoubledVector::operator*(const AlgebraElement& a) const {
  require_same_algebra(algebra_, a.algebra(), "DoubledVector * a");
  return {algebra_, data_ * a.data()};
}

DoubledVector DoubledVector::operator+(const DoubledVector& other) const {
  require_same_algebra(algebra_, other.algebra_, "DoubledVector +");
  return {algebra_, data_ + other.data_};
}

DoubledVector DoubledVector::operator-(const DoubledVector& other) const {
  require_same_algebra(algebra_, other.algebra_, "DoubledVector -");
  return {algebra_, data_ - other.data_};
}

// ---------------------------------------------------------------------------
// DoubledMatrix

DoubledMatrix::DoubledMatrix(const AlgebraElement& m11, const AlgebraElement& m12, const AlgebraElement& m21,
                             const AlgebraElement& m22)
    : algebra_(m11.algebra()) {
  require_same_algebra(algebra_, m12.algebra(), "DoubledMatrix");
  require_same_algebra(algebra_, m21.algebra(), "DoubledMatrix");
  require_same_algebra(algebra_, m22.algebra(), "DoubledMatrix");
  const int n = algebra_.dim();
  data_.resize(2 * n, 2 * n);
  data_.topLeftCorner(n, n) = m11.data();
  data_.topRightCorner(n, n) = m12.data();
  data_.bottomLeftCorner(n, n) = m21.data();
  data_.bottomRightCorner(n, n) = m22.data();
}

DoubledMatrix::DoubledMatrix(Algebra algebra, Matrix data) : algebra_(algebra), data_(std::move(data)) {
  if (data_.rows() != 2 * algebra_.dim() || data_.cols() != 2 * algebra_.dim()) {
    throw Error(ErrorCode::kAlgebraMismatch, "DoubledMatrix carrier has the wrong shape");
  }
}

DoubledMatrix DoubledMatrix::zero(const Algebra& algebra) {
  return {algebra, Matrix::Zero(2 * algebra.dim(), 2 * algebra.dim())};
}

DoubledMatrix DoubledMatrix::identity(const Algebra& algebra) {
  return {algebra, Matrix::Identity(2 * algebra.dim(), 2 * algebra.dim())};
}

DoubledMatrix DoubledMatrix::rho(const Algebra& algebra) {
  const auto one = AlgebraElement::identity(algebra);
  const auto zero = AlgebraElement::zero(algebra);
  return {one, zero, zero, -one};
}

DoubledMatrix DoubledMatrix::p(const Algebra& algebra) {
  const auto one = AlgebraElement::identity(algebra);
  const auto zero = AlgebraElement::zero(algebra);
  return {one, zero, zero, zero};
}

DoubledMatrix DoubledMatrix::cayley(const Algebra& algebra) {
  const auto c = AlgebraElement::constant(algebra, 1.0 / std::sqrt(2.0));
  return {c, c, c * kI, c * (-kI)};
}

AlgebraElement DoubledMatrix::block(int row, int col) const {
  const int n = algebra_.dim();
  return make_block(algebra_, data_.block((row - 1) * n, (col - 1) * n, n, n));
}

DoubledMatrix DoubledMatrix::inverse() const {
  Eigen::PartialPivLU<Matrix> lu(data_);
  return {algebra_, lu.inverse()};
}

DoubledMatrix DoubledMatrix::operator+(const DoubledMatrix& other) const {
  require_same_algebra(algebra_, other.algebra_, "DoubledMatrix +");
  return {algebra_, data_ + other.data_};
}

DoubledMatrix DoubledMatrix::operator-(const DoubledMatrix& other) const {
  require_same_algebra(algebra_, other.algebra_, "DoubledMatrix -");
  return {algebra_, data_ - other.data_};
}

DoubledMatrix DoubledMatrix::operator*(const DoubledMatrix& other) const {
  require_same_algebra(algebra_, other.algebra_, "DoubledMatrix *");
  return {algebra_, data_ * other.data_};
}

DoubledVector DoubledMatrix::operator*(const DoubledVector& x) const {
  require_same_algebra(algebra_, x.algebra(), "DoubledMatrix * x");
  return {algebra_, data_ * x.data()};
}

double op_norm(const DoubledMatrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m.data());
  return svd.singularValues()(0);
}

double op_norm(const DoubledVector& x) {
  Eigen::JacobiSVD<Matrix> svd(x.data());
  return svd.singularValues()(0);
}

double max_abs(const DoubledMatrix& m) { return m.data().cwiseAbs().maxCoeff(); }

double max_abs(const DoubledVector& x) { return x.data().cwiseAbs().maxCoeff(); }

DoubledMatrix commutator(const DoubledMatrix& a, const DoubledMatrix& b) { return a * b - b * a; }

// ---------------------------------------------------------------------------
// theta, sharp, U(theta)

AlgebraElement theta(const DoubledVector& x, const DoubledVector& y) {
  require_same_algebra(x.algebra(), y.algebra(), "theta");
  const int n = x.algebra().dim();
  Matrix value = x.data().topRows(n).adjoint() * y.data().topRows(n) -
                 x.data().bottomRows(n).adjoint() * y.data().bottomRows(n);
  return make_block(x.algebra(), value);
}

DoubledMatrix sharp(const DoubledMatrix& m) {
  const int n = m.algebra().dim();
  Matrix out = m.data().adjoint();
  out.topRightCorner(n, n) *= -1.0;
  out.bottomLeftCorner(n, n) *= -1.0;
  return {m.algebra(), std::move(out)};
}

bool is_group_member(const DoubledMatrix& m, double tol) {
  const DoubledMatrix one = DoubledMatrix::identity(m.algebra());
  const DoubledMatrix ms = sharp(m);
  return op_norm(ms * m - one) <= tol && op_norm(m * ms - one) <= tol;
}

// ---------------------------------------------------------------------------
// Lie algebra

namespace {

AlgebraElement antisymmetrize(const AlgebraElement& a) { return (a - a.adjoint()) * Complex{0.5, 0.0}; }

}  // namespace

LieElement::LieElement(const AlgebraElement& a11, const AlgebraElement& a22, const AlgebraElement& a21)
    : a11_(antisymmetrize(a11)), a22_(antisymmetrize(a22)), a21_(a21) {
  require_same_algebra(a11.algebra(), a22.algebra(), "LieElement");
  require_same_algebra(a11.algebra(), a21.algebra(), "LieElement");
}

LieElement LieElement::zero(const Algebra& algebra) {
  const auto z = AlgebraElement::zero(algebra);
  return {z, z, z};
}

LieElement LieElement::project(const DoubledMatrix& m) {
  // (m - m#)/2 has anti-Hermitian diagonal blocks and a12 = a21*.
  const DoubledMatrix h = (m - sharp(m)) * Complex{0.5, 0.0};
  const AlgebraElement a21 = (h.block(2, 1) + h.block(1, 2).adjoint()) * Complex{0.5, 0.0};
  return {h.block(1, 1), h.block(2, 2), a21};
}

LieElement LieElement::sample(const Algebra& algebra, std::uint64_t seed) {
  return {opdisk::sample(algebra, seed * 3 + 0, {SampleStyle::kAntiHermitian}),
          opdisk::sample(algebra, seed * 3 + 1, {SampleStyle::kAntiHermitian}),
          opdisk::sample(algebra, seed * 3 + 2, {SampleStyle::kGeneral})};
}

DoubledMatrix LieElement::matrix() const { return {a11_, a21_.adjoint(), a21_, a22_}; }

LieElement LieElement::operator+(const LieElement& o) const {
  return {a11_ + o.a11_, a22_ + o.a22_, a21_ + o.a21_};
}

LieElement LieElement::operator-(const LieElement& o) const {
  return {a11_ - o.a11_, a22_ - o.a22_, a21_ - o.a21_};
}

LieElement LieElement::operator*(double s) const {
  const Complex c{s, 0.0};
  return {a11_ * c, a22_ * c, a21_ * c};
}

LieElement bracket(const LieElement& a, const LieElement& b) {
  return LieElement::project(commutator(a.matrix(), b.matrix()));
}

LieSplit lie_split(const LieElement& a) {
  const auto z = AlgebraElement::zero(a.algebra());
  return {LieElement(a.a11(), a.a22(), z), LieElement(z, z, a.a21())};
}

// ---------------------------------------------------------------------------
// Group

GroupElement::GroupElement(DoubledMatrix m, double tol) : m_(std::move(m)) {
  if (!is_group_member(m_, tol)) {
    throw Error(ErrorCode::kNotInGroup, "matrix is not theta-unitary");
  }
}

GroupElement GroupElement::identity(const Algebra& algebra) { return GroupElement(DoubledMatrix::identity(algebra)); }

GroupElement GroupElement::diagonal(const AlgebraElement& u1, const AlgebraElement& u2) {
  const auto z = AlgebraElement::zero(u1.algebra());
  return GroupElement(DoubledMatrix(u1, z, z, u2));
}

GroupElement GroupElement::inverse() const { return GroupElement(sharp(m_)); }

GroupElement GroupElement::operator*(const GroupElement& other) const { return GroupElement(m_ * other.m_); }

GroupElement exp_to_group(const LieElement& a, double t) {
  const Matrix scaled = a.matrix().data() * Complex{t, 0.0};
  Matrix e = scaled.exp();
  return GroupElement(DoubledMatrix(a.algebra(), std::move(e)));
}

GroupElement sample_group(const Algebra& algebra, std::uint64_t seed, double scale) {
  const LieElement a = LieElement::sample(algebra, seed);
  const LieSplit parts = lie_split(a);
  return exp_to_group(parts.diagonal, scale) * exp_to_group(parts.codiagonal, scale);
}

}  // namespace opdisk
