#pragma once

// Sections of the tautological bundle q -> R(q) and of the coefficient bundle
// of right-module endomorphisms of R(q). An endomorphism is stored as a
// (basis, matrix) pair; (x, a) and (x u, u* a u) describe the same map.

#include <functional>
#include <vector>

#include "opdisk/disk_space.hpp"

namespace opdisk {

/// phi(x b) = x (a b) for the basis x and matrix a.
class FiberEndomorphism {
 public:
  FiberEndomorphism(SpherePoint basis, AlgebraElement matrix);

  const SpherePoint& basis() const noexcept { return basis_; }
  const AlgebraElement& matrix() const noexcept { return matrix_; }
  const Algebra& algebra() const noexcept { return matrix_.algebra(); }

  /// Same endomorphism written in the basis x u.
  FiberEndomorphism in_basis(const SpherePoint& other) const;

 private:
  SpherePoint basis_;
  AlgebraElement matrix_;
};

/// p(t) = c0 + c1 t + c2 t^2 + ... with coefficients in A.
class AlgebraPolynomial {
 public:
  explicit AlgebraPolynomial(std::vector<AlgebraElement> coefficients);
  static AlgebraPolynomial constant(const AlgebraElement& c);

  AlgebraElement operator()(double t) const;
  AlgebraElement derivative(double t) const;

  const std::vector<AlgebraElement>& coefficients() const noexcept { return coeffs_; }

 private:
  std::vector<AlgebraElement> coeffs_;
};

/// The orbit curve x(t) = exp(t a) x0 over q(t) = exp(t a) q0 exp(-t a), with
/// a coefficient a(t). For the tautological bundle the section is
/// sigma(t) = x(t) a(t); for the coefficient bundle the endomorphism is
/// (x(t), a(t)).
struct CurveData {
  LieElement generator;
  SpherePoint base_x;
  AlgebraPolynomial coefficient;

  /// Builds the curve through p_{x0}; base_x must lie on the sphere.
  CurveData(LieElement generator, SpherePoint base_x, AlgebraPolynomial coefficient);

  ProjectionPoint base_q() const { return proj_from_sphere(base_x); }
  SpherePoint x(double t) const;
  DoubledVector x_dot(double t) const;
  ProjectionPoint q(double t) const;
  DoubledVector section(double t) const;
};

/// x(t0) (a'(t0) + theta(x(t0), x'(t0)) a(t0)).
DoubledVector taut_derivative(const CurveData& curve, double t0);

/// (x(t0), l'(t0) + [theta(x(t0), x'(t0)), l(t0)]) for the coefficient l(t).
FiberEndomorphism coeff_derivative(const CurveData& curve, double t0);

/// Same formula with an arbitrary coefficient map, differentiated by refined
/// central differences.
FiberEndomorphism coeff_derivative_fd(const LieElement& generator, const SpherePoint& base_x,
                                      const std::function<AlgebraElement(double)>& coefficient, double t0,
                                      double h);

/// x (a theta(x, v)) for v in R(p_x); throws kNotInRange otherwise.
DoubledVector endo_apply(const FiberEndomorphism& phi, const DoubledVector& v);

/// Re-expressed in the basis sr(p_x).
FiberEndomorphism canonical_form(const FiberEndomorphism& phi);

/// ||a||, which does not depend on the basis.
double endo_norm(const FiberEndomorphism& phi);

/// Operator norm of the difference of the canonical matrices.
double endo_distance(const FiberEndomorphism& a, const FiberEndomorphism& b);

/// (x, theta(x, [X, Y] x)) with x = sr(q).
FiberEndomorphism curvature(const TangentVector& X, const TangentVector& Y);
FiberEndomorphism curvature(const TangentVector& X, const TangentVector& Y, const SpherePoint& basis);

/// D_X D_Y sigma - D_Y D_X sigma evaluated by finite differences on the
/// two-parameter family x(t, s) = exp(t a) exp(s b) x0, where a and b are the
/// horizontal generators of X and Y, and sigma(t, s) = x(t, s) c(t, s) with
/// c(0, 0) = sigma0. sigma0 must be invertible; the returned matrix is
/// theta(x0, R sigma) sigma0^{-1} in the basis x0 = sr(q).
FiberEndomorphism curvature_fd_oracle(const TangentVector& X, const TangentVector& Y, const AlgebraElement& sigma0,
                                      double h = 1e-4);

}  // namespace opdisk
