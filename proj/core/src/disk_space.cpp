#include "opdisk/disk_space.hpp"

#include <algorithm>
#include <cmath>

namespace opdisk {

namespace {

double scale_of(const DoubledMatrix& m) { return std::max(1.0, op_norm(m)); }

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

ProjectionResiduals projection_residuals(const DoubledMatrix& q) {
  ProjectionResiduals r;
  r.idempotency = op_norm(q * q - q);
  r.symmetry = op_norm(sharp(q) - q);
  const DoubledMatrix one = DoubledMatrix::identity(q.algebra());
  const Matrix form = hermitian_part((DoubledMatrix::rho(q.algebra()) * (q * 2.0 - one)).data());
  const double lowest = Eigen::SelfAdjointEigenSolver<Matrix>(form, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  r.positivity = std::max(0.0, -lowest);
  return r;
}

// ---------------------------------------------------------------------------
// Domain types

ProjectionPoint::ProjectionPoint(DoubledMatrix q, double tol) : q_(std::move(q)) {
  const double scale = scale_of(q_);
  const ProjectionResiduals r = projection_residuals(q_);
  const double bound = tol * scale * scale;
  if (r.idempotency > bound || r.symmetry > bound || r.positivity > bound) {
    throw Error(ErrorCode::kInvalidPoint, "matrix is not a point of Q_rho (idempotency " +
                                              std::to_string(r.idempotency) + ", symmetry " +
                                              std::to_string(r.symmetry) + ", positivity " +
                                              std::to_string(r.positivity) + ")");
  }
}

ProjectionPoint ProjectionPoint::base(const Algebra& algebra) {
  return ProjectionPoint(DoubledMatrix::p(algebra));
}

SpherePoint::SpherePoint(DoubledVector x, double tol) : x_(std::move(x)) {
  const AlgebraElement norm = theta(x_, x_);
  const double scale = std::max(1.0, op_norm(x_) * op_norm(x_));
  if (op_norm(norm - AlgebraElement::identity(x_.algebra())) > tol * scale) {
    throw Error(ErrorCode::kNotOnSphere, "theta(x, x) != 1");
  }
  const AlgebraElement x1 = x_.x1();
  if (min_singular_value(x1) < 1e-8 * std::max(op_norm(x1), 1e-300)) {
    throw Error(ErrorCode::kNotOnSphere, "x1 is not invertible");
  }
}

TangentVector::TangentVector(ProjectionPoint base, DoubledMatrix x, double tol)
    : base_(std::move(base)), x_(std::move(x)) {
  require_same_algebra(base_.algebra(), x_.algebra(), "TangentVector");
  const DoubledMatrix& q = base_.matrix();
  const double scale = std::max(1.0, op_norm(x_)) * scale_of(q);
  const double sym = op_norm(sharp(x_) - x_);
  const double split = op_norm(x_ * q + q * x_ - x_);
  if (sym > tol * scale || split > tol * scale) {
    throw Error(ErrorCode::kInvalidPoint, "matrix is not tangent to Q_rho (symmetry " + std::to_string(sym) +
                                              ", Xq + qX - X " + std::to_string(split) + ")");
  }
}

TangentVector TangentVector::zero(const ProjectionPoint& base) {
  return {base, DoubledMatrix::zero(base.algebra())};
}

TangentVector TangentVector::operator+(const TangentVector& other) const {
  if (!same_point(base_, other.base_)) throw Error(ErrorCode::kBasePointMismatch, "TangentVector +");
  return {base_, x_ + other.x_};
}

TangentVector TangentVector::operator*(double s) const { return {base_, x_ * Complex{s, 0.0}}; }

bool same_point(const ProjectionPoint& a, const ProjectionPoint& b, double tol) {
  if (!(a.algebra() == b.algebra())) return false;
  const double scale = std::max(scale_of(a.matrix()), scale_of(b.matrix()));
  return op_norm(a.matrix() - b.matrix()) <= tol * scale;
}

// ---------------------------------------------------------------------------
// Parametrization and polar data

ProjectionPoint q_from_b(const AlgebraElement& b) {
  const Algebra& alg = b.algebra();
  const auto one = AlgebraElement::identity(alg);
  const AlgebraElement bsb = b.adjoint() * b;
  const AlgebraElement root = fun_calc(one + bsb, SpectralFunction::kSqrt);
  return ProjectionPoint(DoubledMatrix(one + bsb, -(root * b.adjoint()), b * root, -(b * b.adjoint())));
}

DoubledMatrix lambda_of_q(const ProjectionPoint& q) {
  // Every q equals q_from_b(b) with q11 = 1 + b*b and q21 = b q11^{1/2}, and
  // then |2q - 1|^{-1/2} = [[q11^{1/2}, b*], [b, (1 + b b*)^{1/2}]]. Reading b
  // off the blocks avoids the squared conditioning of an eigensolve of
  // (2q - 1)*(2q - 1).
  const Algebra& alg = q.algebra();
  const auto one = AlgebraElement::identity(alg);
  const AlgebraElement q11 = real_part(q.matrix().block(1, 1));
  if (min_eigenvalue(q11) < 1.0 - 1e-8 * std::max(1.0, op_norm(q11))) {
    throw Error(ErrorCode::kDegenerateProjection, "q11 is not >= 1");
  }
  const AlgebraElement root = fun_calc(q11, SpectralFunction::kSqrt);
  const AlgebraElement b = q.matrix().block(2, 1) * inverse(root);
  return {root, b.adjoint(), b, fun_calc(one + b * b.adjoint(), SpectralFunction::kSqrt)};
}

ProjectionPoint proj_from_sphere(const SpherePoint& x) {
  const DoubledVector& v = x.vector();
  const DoubledMatrix outer(x.algebra(), v.data() * v.data().adjoint());
  return ProjectionPoint(outer * DoubledMatrix::rho(x.algebra()));
}

SpherePoint section_sr(const ProjectionPoint& q) {
  const DoubledMatrix lambda = lambda_of_q(q);
  const DoubledVector column(lambda.block(1, 1), lambda.block(2, 1));
  // lambda_q is Hermitian, so its (1,1) block is; remove rounding skew.
  const AlgebraElement x1 = real_part(column.x1());
  return SpherePoint(DoubledVector(x1, column.x2()));
}

AlgebraElement fiber_unitary(const SpherePoint& x, const SpherePoint& y) {
  if (!same_point(proj_from_sphere(x), proj_from_sphere(y))) {
    throw Error(ErrorCode::kDifferentFibers, "x and y project to different points");
  }
  return theta(x.vector(), y.vector());
}

SpherePoint rotate(const SpherePoint& x, const AlgebraElement& u) { return SpherePoint(x.vector() * u); }

// ---------------------------------------------------------------------------
// Tangent data

DoubledVector lift_form(const TangentVector& X, const SpherePoint& x) {
  if (!same_point(proj_from_sphere(x), X.base())) {
    throw Error(ErrorCode::kBasePointMismatch, "lift_form: basis does not project to the base point");
  }
  return X.matrix() * x.vector();
}

TangentVector tangent_from_lift(const SpherePoint& x, const DoubledVector& v) {
  const ProjectionPoint q = proj_from_sphere(x);
  const double scale = std::max(1.0, op_norm(v)) * std::max(1.0, op_norm(q.matrix()));
  if (op_norm(q.matrix() * v) > kPointTol * scale) {
    throw Error(ErrorCode::kNotHorizontal, "tangent_from_lift: v is not in N(p_x)");
  }
  const Algebra& alg = x.algebra();
  const Matrix& xv = x.vector().data();
  const Matrix& vv = v.data();
  const DoubledMatrix outer(alg, vv * xv.adjoint() + xv * vv.adjoint());
  return {q, outer * DoubledMatrix::rho(alg)};
}

LieElement horizontal_generator(const TangentVector& X) {
  const DoubledMatrix& q = X.base().matrix();
  return LieElement::project(X.matrix() * q - q * X.matrix());
}

ProjectionPoint act(const GroupElement& m, const ProjectionPoint& q) {
  return ProjectionPoint(m.matrix() * q.matrix() * sharp(m.matrix()));
}

SpherePoint act_sphere(const GroupElement& m, const SpherePoint& x) { return SpherePoint(m.matrix() * x.vector()); }

TangentVector act_tangent(const GroupElement& m, const TangentVector& X) {
  const DoubledMatrix inv = sharp(m.matrix());
  return {act(m, X.base()), m.matrix() * X.matrix() * inv};
}

BasisCompletion basis_completion(const SpherePoint& x) {
  const Algebra& alg = x.algebra();
  const AlgebraElement x1 = x.vector().x1();
  const AlgebraElement x2 = x.vector().x2();
  const auto one = AlgebraElement::identity(alg);
  const AlgebraElement y_scale = x1.adjoint() * fun_calc(x1 * x1.adjoint(), SpectralFunction::kInvSqrt);
  // z = (Z* w, w) with Z = x2 x1^{-1} and w = (1 - Z Z*)^{-1/2} = (1 + x2 x2*)^{1/2}.
  const AlgebraElement w = fun_calc(one + x2 * x2.adjoint(), SpectralFunction::kSqrt);
  DoubledVector y = x.vector() * y_scale;
  DoubledVector z((x2 * inverse(x1)).adjoint() * w, w);
  return {std::move(y), std::move(z)};
}

// ---------------------------------------------------------------------------
// Disk coordinates

AlgebraElement disk_coords(const ProjectionPoint& q) {
  const SpherePoint x = section_sr(q);
  return x.vector().x2() * inverse(x.vector().x1());
}

SpherePoint disk_section(const AlgebraElement& z) {
  if (op_norm(z) >= 1.0) throw Error(ErrorCode::kNotInDisk, "||z|| >= 1");
  const auto one = AlgebraElement::identity(z.algebra());
  const AlgebraElement s = fun_calc(one - z.adjoint() * z, SpectralFunction::kInvSqrt);
  return SpherePoint(DoubledVector(s, z * s));
}

ProjectionPoint disk_point(const AlgebraElement& z) { return proj_from_sphere(disk_section(z)); }

TangentVector disk_tangent(const AlgebraElement& z, const AlgebraElement& a) {
  // Horizontal v has v1 = z* v2; d(x2 x1^{-1})(v) = (1 - z z*) v2 x1^{-1}.
  const SpherePoint x = disk_section(z);
  const auto one = AlgebraElement::identity(z.algebra());
  const AlgebraElement v2 = inverse(one - z * z.adjoint()) * a * x.vector().x1();
  return tangent_from_lift(x, DoubledVector(z.adjoint() * v2, v2));
}

AlgebraElement disk_differential(const TangentVector& X) {
  const SpherePoint x = section_sr(X.base());
  const DoubledVector v = lift_form(X, x);
  const AlgebraElement x1inv = inverse(x.vector().x1());
  const AlgebraElement z = x.vector().x2() * x1inv;
  return v.x2() * x1inv - z * v.x1() * x1inv;
}

// ---------------------------------------------------------------------------
// Sampling

ProjectionPoint sample_point(const Algebra& algebra, std::uint64_t seed, double scale) {
  return q_from_b(sample(algebra, seed) * Complex{scale, 0.0});
}

TangentVector sample_tangent(const ProjectionPoint& q, std::uint64_t seed, double scale) {
  const Algebra& alg = q.algebra();
  const AlgebraElement v = sample(alg, seed) * Complex{scale, 0.0};
  const auto zero = AlgebraElement::zero(alg);
  // rho V* rho = V for V = [[0, v], [-v*, 0]].
  const DoubledMatrix V(zero, v, -v.adjoint(), zero);
  const DoubledMatrix& Q = q.matrix();
  return {q, V * Q + Q * V - Q * V * Q * 2.0};
}

}  // namespace opdisk
