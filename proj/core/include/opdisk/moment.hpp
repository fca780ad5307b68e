#pragma once

#include "opdisk/kahler.hpp"

namespace opdisk {

/// f_a(q) as an endomorphism with matrix (1/2i) theta(x, a x).
struct MomentValue {
  FiberEndomorphism value;
};

/// Coefficients of the restricted moment functional (a1, a2) -> nu(c1 a1 + c2 a2).
struct RestrictedImagePoint {
  AlgebraElement c1;
  AlgebraElement c2;
};

/// X_a(q) = a q - q a.
TangentVector inf_action(const LieElement& a, const ProjectionPoint& q);

MomentValue moment_map(const LieElement& a, const ProjectionPoint& q);
MomentValue moment_map(const LieElement& a, const ProjectionPoint& q, const SpherePoint& basis);

struct GradientCheck {
  FiberEndomorphism lhs;  // covariant derivative of f_a along Y
  FiberEndomorphism rhs;  // omega(X_a, Y)
};

/// Both sides of D_Y f_a = omega(X_a, Y). The left side differentiates the
/// moment matrix along the orbit curve of Y with step h.
GradientCheck moment_gradient_check(const LieElement& a, const TangentVector& Y, double h = 1e-4);

/// omega(X_a, X_b) + f_[a,b] - 2i [f_a, f_b] in the basis sr(q).
FiberEndomorphism poisson_defect(const LieElement& a, const LieElement& b, const ProjectionPoint& q);

/// omega(X_a, X_b) - f_[a,b] + 2i [f_a, f_b] in the basis sr(q). This is the
/// combination that vanishes identically.
FiberEndomorphism poisson_defect_corrected(const LieElement& a, const LieElement& b, const ProjectionPoint& q);

struct ValuatedMoment {
  AlgebraElement value;  // nu((1/2i) theta(x, a x))
  AlgebraElement tau;    // (1/2) nu((q a)_11 + (q a)_22)
};

ValuatedMoment valuated_moment(const Valuation& nu, const LieElement& a, const ProjectionPoint& q);

/// c1 = (1 - z z*)^{-1}, c2 = -(1 - z z*)^{-1} z z* for z = disk_coords(q).
RestrictedImagePoint restricted_image(const ProjectionPoint& q);

struct ConvexityWitness {
  AlgebraElement z;
  AlgebraElement target_c1;
  RestrictedImagePoint check;
  double defect = 0.0;  // max(||check.c1 - c1||, ||check.c2 - (1 - c1)||)
};

/// Builds c1 = t A.c1 + (1 - t) B.c1, takes z = (1 - c1^{-1})^{1/2} and
/// recomputes the image point of disk_point(z). Throws kNotRepresentable when
/// 1 - c1^{-1} is not positive.
ConvexityWitness convexity_witness(const RestrictedImagePoint& a, const RestrictedImagePoint& b, double t);

}  // namespace opdisk
