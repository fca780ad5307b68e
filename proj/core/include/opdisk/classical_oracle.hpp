#pragma once

// Closed-form quantities of the classical Poincare disk, used to check the
// general machinery at A = C.

#include <complex>
#include <vector>

namespace opdisk::classical {

using Complex = std::complex<double>;

class ScalarDiskPoint {
 public:
  explicit ScalarDiskPoint(Complex z);
  Complex z() const noexcept { return z_; }

 private:
  Complex z_;
};

/// sum c_jk z^j conj(z)^k.
class ComplexPolynomial {
 public:
  struct Term {
    int z_degree;
    int conj_degree;
    Complex coefficient;
  };

  explicit ComplexPolynomial(std::vector<Term> terms);

  Complex operator()(Complex z) const;
  /// d/dz and d/d(conj z) (Wirtinger derivatives).
  Complex d_z(Complex z) const;
  Complex d_conj(Complex z) const;
  /// d/dt a(z + t b) at t = 0.
  Complex directional(Complex z, Complex b) const { return d_z(z) * b + d_conj(z) * std::conj(b); }

  const std::vector<Term>& terms() const noexcept { return terms_; }

 private:
  std::vector<Term> terms_;
};

/// conj(a) b / (1 - |z|^2)^2.
Complex poincare_metric(const ScalarDiskPoint& z, Complex a, Complex b);

/// Directional derivative of the field at 0 along b.
Complex scalar_connection(const ComplexPolynomial& field, Complex b);

/// (1/(1 - |z|^2)) ((alpha - beta |z|^2)/2 + (w z - conj(w) conj(z))/(2i)) for
/// the Lie element [[i alpha, w], [conj(w), i beta]].
Complex scalar_moment(const ScalarDiskPoint& z, double alpha, double beta, Complex w);

}  // namespace opdisk::classical
