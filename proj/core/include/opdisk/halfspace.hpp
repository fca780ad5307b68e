#pragma once

// The upper half-space H = { x + i y : x = x*, y > 0 } and its structures:
// the Cayley transform to the disk, the form theta_H with symmetry
// [[0, -i], [i, 0]], the sphere K_H, lifts of tangent vectors, the valuated
// trace product, the Liouville form and the metric on the positive cone.

#include "opdisk/disk_space.hpp"

namespace opdisk {

class HalfSpacePoint {
 public:
  /// Throws kNotInHalfSpace unless x is Hermitian and y Hermitian positive
  /// invertible.
  HalfSpacePoint(AlgebraElement x, AlgebraElement y);
  /// Splits zeta into its Hermitian real and imaginary parts.
  static HalfSpacePoint from_zeta(const AlgebraElement& zeta);

  const AlgebraElement& x() const noexcept { return x_; }
  const AlgebraElement& y() const noexcept { return y_; }
  AlgebraElement zeta() const { return x_ + y_ * kI; }
  const Algebra& algebra() const noexcept { return x_.algebra(); }

 private:
  AlgebraElement x_;
  AlgebraElement y_;
};

/// A tangent vector v = x' + i y' at a half-space point. Any v is allowed.
struct HalfTangent {
  HalfSpacePoint at;
  AlgebraElement v;

  AlgebraElement real() const { return real_part(v); }
  AlgebraElement imag() const { return imag_part(v); }
};

/// (1 + i h)(1 - i h)^{-1}.
AlgebraElement mobius_to_disk(const HalfSpacePoint& h);
/// i (1 - z)(1 + z)^{-1}; kNotInDisk for ||z|| >= 1.
HalfSpacePoint mobius_to_halfspace(const AlgebraElement& z);
/// Derivative of the Cayley transform at h along v: i (1 + z) v (1 - i h)^{-1}.
AlgebraElement mobius_differential(const HalfSpacePoint& h, const AlgebraElement& v);

/// -i (x1* y2 - x2* y1).
AlgebraElement theta_h(const DoubledVector& x, const DoubledVector& y);

/// U x with U = (1/sqrt 2) [[1, 1], [i, -i]]; theta_h(U x, U y) = theta(x, y).
DoubledVector to_halfspace_frame(const DoubledVector& x);

/// (i x1, (x1*)^{-1} + i x2) for x in K_H; kNotOnSphere otherwise.
DoubledVector x_perp(const DoubledVector& x);

/// (1, zeta) (2 y)^{-1/2}.
DoubledVector halfspace_section(const HalfSpacePoint& zeta);

/// ((2y)^{-1}, zeta (2y)^{-1} - i) i v (2y)^{-1/2}, which lies in the
/// theta_h-orthogonal complement of halfspace_section(zeta).
DoubledVector halfspace_lift(const HalfSpacePoint& zeta, const HalfTangent& v);

/// -nu((2y)^{-1} v* (2y)^{-1} w).
AlgebraElement trace_product(const Valuation& nu, const HalfTangent& v, const HalfTangent& w);

/// nu(y^{-1} x y^{-1} v).
AlgebraElement liouville(const Valuation& nu, const HalfSpacePoint& zeta, const HalfTangent& v);

struct LiouvilleDerivative {
  AlgebraElement closed_form;
  AlgebraElement finite_difference;
};

/// d(alpha)(v, w) as nu(y^{-1} x'_v y^{-1} y'_w - y^{-1} x'_w y^{-1} y'_v),
/// together with the exterior derivative of the real one-form
/// nu(y^{-1} x y^{-1} y') computed by refined central differences along the
/// affine family zeta + t v + s w. Throws kStepOutOfHalfSpace if the stencil
/// leaves H.
LiouvilleDerivative d_liouville_fd(const Valuation& nu, const HalfSpacePoint& zeta, const HalfTangent& v,
                                   const HalfTangent& w, double h = 1e-4);

/// nu(y^{-1} x1 y^{-1} x2) for y positive invertible (kNotPositive otherwise).
AlgebraElement spd_bracket(const Valuation& nu, const AlgebraElement& y, const AlgebraElement& x1,
                           const AlgebraElement& x2);

/// g . y = (g^{-1})* y g^{-1}, the congruence action of an invertible g.
AlgebraElement congruence(const AlgebraElement& g, const AlgebraElement& y);

}  // namespace opdisk
