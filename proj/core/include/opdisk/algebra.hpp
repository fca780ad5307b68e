#pragma once

// Concrete finite-dimensional C*-algebras.
//
// Every element is carried as a dense complex square matrix. For the
// commutative algebra C^k the matrix is diagonal (k x k) and every operation
// preserves that shape; the scalar algebra is the 1 x 1 case. Carrying all three
// kinds the same way lets the doubled constructions (M_2(A), A^2) be plain
// block matrices.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "opdisk/error.hpp"

namespace opdisk {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr Complex kI{0.0, 1.0};

class Algebra {
 public:
  enum class Kind { kMatrix, kCommutative, kScalar };

  static Algebra matrix(int n);
  static Algebra commutative(int k);
  static Algebra scalar();

  /// Parses "matrix:N", "commutative:K" or "scalar".
  static Algebra parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  /// Side length of the carrier matrix.
  int dim() const noexcept { return dim_; }
  bool is_commutative() const noexcept { return kind_ != Kind::kMatrix; }
  std::string to_string() const;

  friend bool operator==(const Algebra&, const Algebra&) = default;

 private:
  Algebra(Kind kind, int dim) : kind_(kind), dim_(dim) {}

  Kind kind_;
  int dim_;
};

class AlgebraElement {
 public:
  /// Throws kAlgebraMismatch when the carrier shape does not fit the algebra
  /// (wrong size, or off-diagonal entries for a commutative algebra).
  AlgebraElement(Algebra algebra, Matrix data);

  static AlgebraElement zero(const Algebra& algebra);
  static AlgebraElement identity(const Algebra& algebra);
  static AlgebraElement constant(const Algebra& algebra, Complex c);
  /// Element with the given spectrum on the diagonal.
  static AlgebraElement diagonal(const Algebra& algebra, std::span<const Complex> values);

  const Algebra& algebra() const noexcept { return algebra_; }
  const Matrix& data() const noexcept { return data_; }

  AlgebraElement adjoint() const;

  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator-=(const AlgebraElement& other);
  AlgebraElement& operator*=(Complex c);

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator-(const AlgebraElement& a);
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(AlgebraElement a, Complex c) { return a *= c; }
  friend AlgebraElement operator*(Complex c, AlgebraElement a) { return a *= c; }

 private:
  Algebra algebra_;
  Matrix data_;
};

/// Throws kAlgebraMismatch unless both elements live in the same algebra.
void require_same_algebra(const Algebra& a, const Algebra& b, std::string_view where);

/// Largest singular value (max modulus for the commutative and scalar algebras).
double op_norm(const AlgebraElement& a);

/// Commutator ab - ba.
AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b);

/// (a + a*)/2 and (a - a*)/(2i).
AlgebraElement real_part(const AlgebraElement& a);
AlgebraElement imag_part(const AlgebraElement& a);

enum class SpectralFunction { kSqrt, kInvSqrt, kAbs, kInverse };

struct FunCalcOptions {
  /// Relative bound on ||a - a*|| accepted before symmetrizing.
  double hermitian_tol = 1e-8;
  /// Relative lower bound on the spectrum for kInvSqrt and kInverse.
  double singular_tol = 1e-12;
  /// Negative eigenvalues down to -negative_tol * ||a|| are clamped to zero for
  /// kSqrt; anything below that is rejected with kNotPositive.
  double negative_tol = 1e-10;
};

/// Applies a real function to a Hermitian element through its eigendecomposition.
AlgebraElement fun_calc(const AlgebraElement& a, SpectralFunction f, const FunCalcOptions& options = {});

/// |g| = (g*g)^{1/2} for an arbitrary element.
AlgebraElement abs_value(const AlgebraElement& g);

/// Inverse of an arbitrary invertible element (kSingularSpectrum otherwise).
AlgebraElement inverse(const AlgebraElement& a);

/// Smallest singular value.
double min_singular_value(const AlgebraElement& a);

/// Smallest eigenvalue of a Hermitian element (after symmetrization).
double min_eigenvalue(const AlgebraElement& a);

/// a = a* to tol and min eigenvalue >= -tol. Both tolerances are relative to
/// max(1, ||a||).
bool is_positive(const AlgebraElement& a, double tol = 1e-10);

/// Positive tracial linear map into a commutative algebra: the normalized trace
/// for matrix algebras, the identity for commutative and scalar algebras.
class Valuation {
 public:
  enum class Rule { kNormalizedTrace, kIdentity };

  /// The valuation every algebra in this library carries.
  static Valuation canonical(const Algebra& source);

  const Algebra& source() const noexcept { return source_; }
  const Algebra& target() const noexcept { return target_; }
  Rule rule() const noexcept { return rule_; }

 private:
  Valuation(Algebra source, Algebra target, Rule rule)
      : source_(source), target_(target), rule_(rule) {}

  Algebra source_;
  Algebra target_;
  Rule rule_;
};

AlgebraElement valuate(const Valuation& nu, const AlgebraElement& a);

enum class SampleStyle { kGeneral, kHermitian, kAntiHermitian, kContraction, kUnitary };

struct SampleSpec {
  SampleStyle style = SampleStyle::kGeneral;
  /// Spectral norm of the result for kContraction, in (0, 1).
  double radius = 0.9;
};

/// Deterministic random element: the same (algebra, seed, spec) always gives
/// bit-identical output. General entries are standard complex Gaussians scaled
/// by 1/sqrt(dim).
AlgebraElement sample(const Algebra& algebra, std::uint64_t seed, SampleSpec spec = {});

}  // namespace opdisk
