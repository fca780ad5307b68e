#include "opdisk/halfspace.hpp"

#include <algorithm>
#include <cmath>

#include "opdisk/finite_difference.hpp"

namespace opdisk {

namespace {

constexpr double kHermitianTol = 1e-8;

bool is_hermitian(const AlgebraElement& a) {
  return op_norm(a - a.adjoint()) <= kHermitianTol * std::max(1.0, op_norm(a));
}

AlgebraElement inv_sqrt_of_double(const AlgebraElement& y) {
  return fun_calc(y * Complex{2.0, 0.0}, SpectralFunction::kInvSqrt);
}

}  // namespace

HalfSpacePoint::HalfSpacePoint(AlgebraElement x, AlgebraElement y) : x_(std::move(x)), y_(std::move(y)) {
  require_same_algebra(x_.algebra(), y_.algebra(), "HalfSpacePoint");
  if (!is_hermitian(x_) || !is_hermitian(y_)) {
    throw Error(ErrorCode::kNotInHalfSpace, "real and imaginary parts must be Hermitian");
  }
  x_ = real_part(x_);
  y_ = real_part(y_);
  if (min_eigenvalue(y_) <= 1e-12 * std::max(1.0, op_norm(y_))) {
    throw Error(ErrorCode::kNotInHalfSpace, "imaginary part is not positive invertible");
  }
}

HalfSpacePoint HalfSpacePoint::from_zeta(const AlgebraElement& zeta) {
  return {real_part(zeta), imag_part(zeta)};
}

AlgebraElement mobius_to_disk(const HalfSpacePoint& h) {
  const auto one = AlgebraElement::identity(h.algebra());
  const AlgebraElement ih = h.zeta() * kI;
  AlgebraElement z = (one + ih) * inverse(one - ih);
  if (op_norm(z) >= 1.0) throw Error(ErrorCode::kNotInDisk, "mobius_to_disk: image left the disk");
  return z;
}

HalfSpacePoint mobius_to_halfspace(const AlgebraElement& z) {
  if (op_norm(z) >= 1.0) throw Error(ErrorCode::kNotInDisk, "mobius_to_halfspace: ||z|| >= 1");
  const auto one = AlgebraElement::identity(z.algebra());
  return HalfSpacePoint::from_zeta((one - z) * inverse(one + z) * kI);
}

AlgebraElement mobius_differential(const HalfSpacePoint& h, const AlgebraElement& v) {
  const auto one = AlgebraElement::identity(h.algebra());
  const AlgebraElement resolvent = inverse(one - h.zeta() * kI);
  const AlgebraElement z = (one + h.zeta() * kI) * resolvent;
  return (one + z) * v * resolvent * kI;
}

AlgebraElement theta_h(const DoubledVector& x, const DoubledVector& y) {
  require_same_algebra(x.algebra(), y.algebra(), "theta_h");
  const AlgebraElement value = x.x1().adjoint() * y.x2() - x.x2().adjoint() * y.x1();
  return value * Complex{0.0, -1.0};
}

DoubledVector to_halfspace_frame(const DoubledVector& x) { return DoubledMatrix::cayley(x.algebra()) * x; }

DoubledVector x_perp(const DoubledVector& x) {
  const auto one = AlgebraElement::identity(x.algebra());
  const double scale = std::max(1.0, op_norm(x) * op_norm(x));
  if (op_norm(theta_h(x, x) - one) > kPointTol * scale || min_singular_value(x.x1()) < 1e-12) {
    throw Error(ErrorCode::kNotOnSphere, "x_perp: vector is not in K_H");
  }
  return {x.x1() * kI, inverse(x.x1().adjoint()) + x.x2() * kI};
}

DoubledVector halfspace_section(const HalfSpacePoint& zeta) {
  const AlgebraElement s = inv_sqrt_of_double(zeta.y());
  return {s, zeta.zeta() * s};
}

DoubledVector halfspace_lift(const HalfSpacePoint& zeta, const HalfTangent& v) {
  const AlgebraElement s = inv_sqrt_of_double(zeta.y());
  const AlgebraElement inv2y = s * s;
  const AlgebraElement w = v.v * kI * s;
  return {inv2y * w, (zeta.zeta() * inv2y - AlgebraElement::identity(zeta.algebra()) * kI) * w};
}

namespace {

void require_same_base(const HalfSpacePoint& a, const HalfSpacePoint& b, const char* where) {
  const double gap = op_norm(a.zeta() - b.zeta());
  if (!(a.algebra() == b.algebra()) || gap > kPointTol * std::max(1.0, op_norm(a.zeta()))) {
    throw Error(ErrorCode::kBasePointMismatch, where);
  }
}

}  // namespace

AlgebraElement trace_product(const Valuation& nu, const HalfTangent& v, const HalfTangent& w) {
  require_same_base(v.at, w.at, "trace_product");
  const AlgebraElement inv2y = inverse(v.at.y() * Complex{2.0, 0.0});
  return -valuate(nu, inv2y * v.v.adjoint() * inv2y * w.v);
}

AlgebraElement liouville(const Valuation& nu, const HalfSpacePoint& zeta, const HalfTangent& v) {
  const AlgebraElement yinv = inverse(zeta.y());
  return valuate(nu, yinv * zeta.x() * yinv * v.v);
}

LiouvilleDerivative d_liouville_fd(const Valuation& nu, const HalfSpacePoint& zeta, const HalfTangent& v,
                                   const HalfTangent& w, double h) {
  require_same_base(zeta, v.at, "d_liouville_fd");
  require_same_base(zeta, w.at, "d_liouville_fd");
  const AlgebraElement yinv = inverse(zeta.y());
  const AlgebraElement xv = v.real(), yv = v.imag();
  const AlgebraElement xw = w.real(), yw = w.imag();
  AlgebraElement closed = valuate(nu, yinv * xv * yinv * yw - yinv * xw * yinv * yv);

  // Every stencil point is at most 2h away along v or w.
  const double reach = 2.0 * h * (op_norm(yv) + op_norm(yw));
  if (reach >= min_eigenvalue(zeta.y())) {
    throw Error(ErrorCode::kStepOutOfHalfSpace, "d_liouville_fd: finite-difference stencil leaves H");
  }

  // The real one-form beta(u) = nu(y^{-1} x y^{-1} Im u) at zeta + t v + s w.
  auto beta = [&](double t, double s, const AlgebraElement& direction) {
    const AlgebraElement x = zeta.x() + xv * Complex{t, 0.0} + xw * Complex{s, 0.0};
    const AlgebraElement y = zeta.y() + yv * Complex{t, 0.0} + yw * Complex{s, 0.0};
    const AlgebraElement yi = inverse(y);
    return valuate(nu, yi * x * yi * direction);
  };
  const AlgebraElement dv_beta_w = fd::derivative([&](double t) { return beta(t, 0.0, yw); }, 0.0, h);
  const AlgebraElement dw_beta_v = fd::derivative([&](double s) { return beta(0.0, s, yv); }, 0.0, h);
  return {std::move(closed), dv_beta_w - dw_beta_v};
}

AlgebraElement spd_bracket(const Valuation& nu, const AlgebraElement& y, const AlgebraElement& x1,
                           const AlgebraElement& x2) {
  if (!is_hermitian(y) || min_eigenvalue(y) <= 1e-12 * std::max(1.0, op_norm(y))) {
    throw Error(ErrorCode::kNotPositive, "spd_bracket: y is not positive invertible");
  }
  const AlgebraElement yinv = inverse(y);
  return valuate(nu, yinv * x1 * yinv * x2);
}

AlgebraElement congruence(const AlgebraElement& g, const AlgebraElement& y) {
  const AlgebraElement ginv = inverse(g);
  return ginv.adjoint() * y * ginv;
}

}  // namespace opdisk
