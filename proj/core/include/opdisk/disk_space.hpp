#pragma once

// The space Q_rho of theta-symmetric idempotents that decompose theta, the
// sphere K = { x : theta(x, x) = 1, x1 invertible }, the principal fibration
// pr(x) = x x* rho with global section sr(q) = lambda_q e1, tangent vectors and
// their horizontal lifts, the U(theta) action, and disk coordinates
// z = x2 x1^{-1}.

#include "opdisk/doubled.hpp"

namespace opdisk {

inline constexpr double kPointTol = 1e-8;

/// A point of Q_rho: q^2 = q, q# = q and rho(2q - 1) >= 0.
class ProjectionPoint {
 public:
  /// Validates all three conditions with a tolerance relative to ||q||^2.
  explicit ProjectionPoint(DoubledMatrix q, double tol = kPointTol);

  /// The base point p = diag(1, 0).
  static ProjectionPoint base(const Algebra& algebra);

  const DoubledMatrix& matrix() const noexcept { return q_; }
  const Algebra& algebra() const noexcept { return q_.algebra(); }

 private:
  DoubledMatrix q_;
};

/// A point x of K.
class SpherePoint {
 public:
  /// Throws kNotOnSphere if theta(x, x) != 1 or x1 is not invertible.
  explicit SpherePoint(DoubledVector x, double tol = kPointTol);

  const DoubledVector& vector() const noexcept { return x_; }
  const Algebra& algebra() const noexcept { return x_.algebra(); }

 private:
  DoubledVector x_;
};

/// X in (T Q_rho)_q: rho X* rho = X and X q + q X = X.
class TangentVector {
 public:
  TangentVector(ProjectionPoint base, DoubledMatrix x, double tol = kPointTol);

  static TangentVector zero(const ProjectionPoint& base);

  const ProjectionPoint& base() const noexcept { return base_; }
  const DoubledMatrix& matrix() const noexcept { return x_; }

  TangentVector operator+(const TangentVector& other) const;
  TangentVector operator*(double s) const;

 private:
  ProjectionPoint base_;
  DoubledMatrix x_;
};

/// Residuals of the three defining conditions of Q_rho.
struct ProjectionResiduals {
  double idempotency = 0.0;    // ||q^2 - q||
  double symmetry = 0.0;       // ||rho q* rho - q||
  double positivity = 0.0;     // max(0, -min eig rho(2q - 1))
};
ProjectionResiduals projection_residuals(const DoubledMatrix& q);

/// True when q1 and q2 agree to tol in operator norm.
bool same_point(const ProjectionPoint& a, const ProjectionPoint& b, double tol = kPointTol);

/// [[1 + b*b, -(1 + b*b)^{1/2} b*], [b (1 + b*b)^{1/2}, -b b*]].
ProjectionPoint q_from_b(const AlgebraElement& b);

/// lambda_q = |2q - 1|^{-1/2}; lambda_q rho lambda_q = rho and
/// lambda_q p lambda_q^{-1} = q.
DoubledMatrix lambda_of_q(const ProjectionPoint& q);

/// p_x = x x* rho.
ProjectionPoint proj_from_sphere(const SpherePoint& x);

/// sr(q) = lambda_q e1, whose first coordinate is positive and invertible.
SpherePoint section_sr(const ProjectionPoint& q);

/// The unitary u = theta(x, y) with y = x u (kDifferentFibers if p_x != p_y).
AlgebraElement fiber_unitary(const SpherePoint& x, const SpherePoint& y);

/// x u for a unitary u; stays on the fiber of x.
SpherePoint rotate(const SpherePoint& x, const AlgebraElement& u);

/// kappa_x(X) = X x, the horizontal lift of X at x. Requires p_x = X.base().
DoubledVector lift_form(const TangentVector& X, const SpherePoint& x);

/// (d pr)_x v = v x* rho + x v* rho for horizontal v (p_x v = 0).
TangentVector tangent_from_lift(const SpherePoint& x, const DoubledVector& v);

/// a = X q - q X, the Lie element with [a, q] = X.
LieElement horizontal_generator(const TangentVector& X);

/// m q m^{-1}.
ProjectionPoint act(const GroupElement& m, const ProjectionPoint& q);
/// m x.
SpherePoint act_sphere(const GroupElement& m, const SpherePoint& x);
/// m X m^{-1} at m q m^{-1}.
TangentVector act_tangent(const GroupElement& m, const TangentVector& X);

struct BasisCompletion {
  DoubledVector range;      // y in R(p_x) with theta(y, y) = 1, y1 > 0
  DoubledVector nullspace;  // z in N(p_x) with theta(z, z) = -1, z2 > 0
};

/// The unique theta-orthonormal pair adapted to p_x with y1 and z2 positive.
BasisCompletion basis_completion(const SpherePoint& x);

/// z = x2 x1^{-1} for any x in the fiber of q.
AlgebraElement disk_coords(const ProjectionPoint& q);

/// The section ((1 - z*z)^{-1/2}, z (1 - z*z)^{-1/2}) over a disk point.
SpherePoint disk_section(const AlgebraElement& z);

/// p_x for x = disk_section(z). Throws kNotInDisk when ||z|| >= 1.
ProjectionPoint disk_point(const AlgebraElement& z);

/// Tangent vector at disk_point(z) whose disk-coordinate derivative is a.
TangentVector disk_tangent(const AlgebraElement& z, const AlgebraElement& a);

/// Derivative of disk coordinates along X: (d pi)(kappa_x X).
AlgebraElement disk_differential(const TangentVector& X);

/// Random point q_from_b(b) with a general b.
ProjectionPoint sample_point(const Algebra& algebra, std::uint64_t seed, double scale = 1.0);

/// Random tangent vector X = V q + q V - 2 q V q with V theta-symmetric and
/// codiagonal.
TangentVector sample_tangent(const ProjectionPoint& q, std::uint64_t seed, double scale = 1.0);

}  // namespace opdisk
