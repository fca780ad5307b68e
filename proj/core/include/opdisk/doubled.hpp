#pragma once

// The doubled objects over an algebra A: column pairs A^2, block matrices
// M_2(A), the indefinite form theta(x, y) = x1* y1 - x2* y2 with symmetry
// rho = diag(1, -1), the theta-adjoint m# = rho m* rho, the group
// U(theta) = { m : m# m = 1 } and its Lie algebra.

#include "opdisk/algebra.hpp"

namespace opdisk {

/// An element x = (x1, x2) of A^2, stored as a 2n x n block column.
class DoubledVector {
 public:
  DoubledVector(const AlgebraElement& x1, const AlgebraElement& x2);
  DoubledVector(Algebra algebra, Matrix data);

  static DoubledVector zero(const Algebra& algebra);
  static DoubledVector e1(const Algebra& algebra);
  static DoubledVector e2(const Algebra& algebra);

  const Algebra& algebra() const noexcept { return algebra_; }
  const Matrix& data() const noexcept { return data_; }
  AlgebraElement x1() const;
  AlgebraElement x2() const;

  /// Right module action x -> x a.
  DoubledVector operator*(const AlgebraElement& a) const;
  DoubledVector operator*(Complex c) const { return {algebra_, data_ * c}; }
  DoubledVector operator+(const DoubledVector& other) const;
  DoubledVector operator-(const DoubledVector& other) const;

 private:
  Algebra algebra_;
  Matrix data_;
};

/// A 2 x 2 matrix over A, stored as a dense 2n x 2n matrix.
class DoubledMatrix {
 public:
  DoubledMatrix(const AlgebraElement& m11, const AlgebraElement& m12, const AlgebraElement& m21,
                const AlgebraElement& m22);
  DoubledMatrix(Algebra algebra, Matrix data);

  static DoubledMatrix zero(const Algebra& algebra);
  static DoubledMatrix identity(const Algebra& algebra);
  /// diag(1, -1).
  static DoubledMatrix rho(const Algebra& algebra);
  /// diag(1, 0) = (1 + rho)/2.
  static DoubledMatrix p(const Algebra& algebra);
  /// (1/sqrt 2) [[1, 1], [i, -i]], intertwining the disk and half-space forms.
  static DoubledMatrix cayley(const Algebra& algebra);

  const Algebra& algebra() const noexcept { return algebra_; }
  const Matrix& data() const noexcept { return data_; }
  /// Block (row, col) with row, col in {1, 2}.
  AlgebraElement block(int row, int col) const;

  DoubledMatrix adjoint() const { return {algebra_, data_.adjoint()}; }
  DoubledMatrix inverse() const;

  DoubledMatrix operator+(const DoubledMatrix& other) const;
  DoubledMatrix operator-(const DoubledMatrix& other) const;
  DoubledMatrix operator-() const { return {algebra_, -data_}; }
  DoubledMatrix operator*(const DoubledMatrix& other) const;
  DoubledMatrix operator*(Complex c) const { return {algebra_, data_ * c}; }
  friend DoubledMatrix operator*(Complex c, const DoubledMatrix& m) { return m * c; }
  DoubledVector operator*(const DoubledVector& x) const;

 private:
  Algebra algebra_;
  Matrix data_;
};

/// Operator norm of the 2n x 2n carrier (the C*-norm of M_2(A)).
double op_norm(const DoubledMatrix& m);
double op_norm(const DoubledVector& x);
/// Largest entry modulus, used for exact-identity residuals.
double max_abs(const DoubledMatrix& m);
double max_abs(const DoubledVector& x);

DoubledMatrix commutator(const DoubledMatrix& a, const DoubledMatrix& b);

/// theta(x, y) = x1* y1 - x2* y2.
AlgebraElement theta(const DoubledVector& x, const DoubledVector& y);

/// m# = rho m* rho.
DoubledMatrix sharp(const DoubledMatrix& m);

/// ||m# m - 1|| <= tol and ||m m# - 1|| <= tol.
bool is_group_member(const DoubledMatrix& m, double tol = 1e-8);

/// An element of the Lie algebra of U(theta): [[a11, a21*], [a21, a22]] with
/// a11, a22 anti-Hermitian. Only (a11, a22, a21) are stored so membership
/// holds by construction.
class LieElement {
 public:
  /// a11 and a22 are antisymmetrized: a -> (a - a*)/2.
  LieElement(const AlgebraElement& a11, const AlgebraElement& a22, const AlgebraElement& a21);

  static LieElement zero(const Algebra& algebra);
  /// Projects an arbitrary block matrix onto the Lie algebra, (m - m#)/2.
  static LieElement project(const DoubledMatrix& m);
  static LieElement sample(const Algebra& algebra, std::uint64_t seed);

  const Algebra& algebra() const noexcept { return a11_.algebra(); }
  const AlgebraElement& a11() const noexcept { return a11_; }
  const AlgebraElement& a22() const noexcept { return a22_; }
  const AlgebraElement& a21() const noexcept { return a21_; }

  DoubledMatrix matrix() const;

  LieElement operator+(const LieElement& other) const;
  LieElement operator-(const LieElement& other) const;
  LieElement operator*(double s) const;

 private:
  AlgebraElement a11_;
  AlgebraElement a22_;
  AlgebraElement a21_;
};

/// Lie bracket, which stays inside the Lie algebra.
LieElement bracket(const LieElement& a, const LieElement& b);

struct LieSplit {
  LieElement diagonal;
  LieElement codiagonal;
};

/// Diagonal (a21 = 0) plus codiagonal (a11 = a22 = 0) parts.
LieSplit lie_split(const LieElement& a);

/// An element of U(theta); membership is checked on construction.
class GroupElement {
 public:
  /// Throws kNotInGroup when m# m or m m# is farther than tol from 1.
  explicit GroupElement(DoubledMatrix m, double tol = 1e-8);

  static GroupElement identity(const Algebra& algebra);
  /// diag(u1, u2) with u1, u2 unitary.
  static GroupElement diagonal(const AlgebraElement& u1, const AlgebraElement& u2);

  const DoubledMatrix& matrix() const noexcept { return m_; }
  const Algebra& algebra() const noexcept { return m_.algebra(); }
  /// The inverse of a group element is its theta-adjoint.
  GroupElement inverse() const;
  GroupElement operator*(const GroupElement& other) const;

 private:
  DoubledMatrix m_;
};

/// exp(t a), computed on the flattened 2n x 2n matrix by scaling and squaring
/// with a Pade approximant.
GroupElement exp_to_group(const LieElement& a, double t);

/// A random element of U(theta) built as a product of exponentials of
/// diagonal and codiagonal Lie elements.
GroupElement sample_group(const Algebra& algebra, std::uint64_t seed, double scale = 0.7);

}  // namespace opdisk
