#include "opdisk/bundles.hpp"

#include <algorithm>

#include <unsupported/Eigen/MatrixFunctions>

#include "opdisk/finite_difference.hpp"

namespace opdisk {

FiberEndomorphism::FiberEndomorphism(SpherePoint basis, AlgebraElement matrix)
    : basis_(std::move(basis)), matrix_(std::move(matrix)) {
  require_same_algebra(basis_.algebra(), matrix_.algebra(), "FiberEndomorphism");
}

FiberEndomorphism FiberEndomorphism::in_basis(const SpherePoint& other) const {
  const AlgebraElement u = fiber_unitary(basis_, other);
  return {other, u.adjoint() * matrix_ * u};
}

// ---------------------------------------------------------------------------

AlgebraPolynomial::AlgebraPolynomial(std::vector<AlgebraElement> coefficients) : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) throw Error(ErrorCode::kConfigError, "AlgebraPolynomial needs at least one coefficient");
  for (const auto& c : coeffs_) require_same_algebra(coeffs_.front().algebra(), c.algebra(), "AlgebraPolynomial");
}

AlgebraPolynomial AlgebraPolynomial::constant(const AlgebraElement& c) { return AlgebraPolynomial({c}); }

AlgebraElement AlgebraPolynomial::operator()(double t) const {
  AlgebraElement acc = coeffs_.back();
  for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it) acc = acc * Complex{t, 0.0} + *it;
  return acc;
}

AlgebraElement AlgebraPolynomial::derivative(double t) const {
  const Algebra& alg = coeffs_.front().algebra();
  AlgebraElement acc = AlgebraElement::zero(alg);
  for (std::size_t k = coeffs_.size(); k-- > 1;) {
    acc = acc * Complex{t, 0.0} + coeffs_[k] * Complex{static_cast<double>(k), 0.0};
  }
  return acc;
}

// ---------------------------------------------------------------------------

CurveData::CurveData(LieElement generator_, SpherePoint base_x_, AlgebraPolynomial coefficient_)
    : generator(std::move(generator_)), base_x(std::move(base_x_)), coefficient(std::move(coefficient_)) {
  require_same_algebra(generator.algebra(), base_x.algebra(), "CurveData");
}

SpherePoint CurveData::x(double t) const { return act_sphere(exp_to_group(generator, t), base_x); }

DoubledVector CurveData::x_dot(double t) const { return generator.matrix() * x(t).vector(); }

ProjectionPoint CurveData::q(double t) const { return proj_from_sphere(x(t)); }

DoubledVector CurveData::section(double t) const { return x(t).vector() * coefficient(t); }

DoubledVector taut_derivative(const CurveData& curve, double t0) {
  const SpherePoint x = curve.x(t0);
  const AlgebraElement connection = theta(x.vector(), curve.x_dot(t0));
  return x.vector() * (curve.coefficient.derivative(t0) + connection * curve.coefficient(t0));
}

FiberEndomorphism coeff_derivative(const CurveData& curve, double t0) {
  const SpherePoint x = curve.x(t0);
  const AlgebraElement connection = theta(x.vector(), curve.x_dot(t0));
  const AlgebraElement lambda = curve.coefficient(t0);
  return {x, curve.coefficient.derivative(t0) + commutator(connection, lambda)};
}

FiberEndomorphism coeff_derivative_fd(const LieElement& generator, const SpherePoint& base_x,
                                      const std::function<AlgebraElement(double)>& coefficient, double t0,
                                      double h) {
  const SpherePoint x = act_sphere(exp_to_group(generator, t0), base_x);
  const AlgebraElement connection = theta(x.vector(), generator.matrix() * x.vector());
  const AlgebraElement rate = fd::derivative(coefficient, t0, h);
  return {x, rate + commutator(connection, coefficient(t0))};
}

// ---------------------------------------------------------------------------

DoubledVector endo_apply(const FiberEndomorphism& phi, const DoubledVector& v) {
  const DoubledVector& x = phi.basis().vector();
  const AlgebraElement coords = theta(x, v);
  const DoubledVector projected = x * coords;
  if (op_norm(projected - v) > kPointTol * std::max(1.0, op_norm(v))) {
    throw Error(ErrorCode::kNotInRange, "endo_apply: vector is not in the range of p_x");
  }
  return x * (phi.matrix() * coords);
}

FiberEndomorphism canonical_form(const FiberEndomorphism& phi) {
  return phi.in_basis(section_sr(proj_from_sphere(phi.basis())));
}

double endo_norm(const FiberEndomorphism& phi) { return op_norm(phi.matrix()); }

double endo_distance(const FiberEndomorphism& a, const FiberEndomorphism& b) {
  return op_norm(canonical_form(a).matrix() - canonical_form(b).matrix());
}

FiberEndomorphism curvature(const TangentVector& X, const TangentVector& Y) {
  return curvature(X, Y, section_sr(X.base()));
}

FiberEndomorphism curvature(const TangentVector& X, const TangentVector& Y, const SpherePoint& basis) {
  if (!same_point(X.base(), Y.base())) throw Error(ErrorCode::kBasePointMismatch, "curvature");
  if (!same_point(proj_from_sphere(basis), X.base())) {
    throw Error(ErrorCode::kBasePointMismatch, "curvature: basis is over another point");
  }
  const DoubledMatrix bracket = commutator(X.matrix(), Y.matrix());
  return {basis, theta(basis.vector(), bracket * basis.vector())};
}

FiberEndomorphism curvature_fd_oracle(const TangentVector& X, const TangentVector& Y, const AlgebraElement& sigma0,
                                      double h) {
  if (!same_point(X.base(), Y.base())) throw Error(ErrorCode::kBasePointMismatch, "curvature_fd_oracle");
  const Algebra& alg = X.base().algebra();
  const SpherePoint x0 = section_sr(X.base());
  const DoubledMatrix a = horizontal_generator(X).matrix();
  const DoubledMatrix b = horizontal_generator(Y).matrix();
  const AlgebraElement one = AlgebraElement::identity(alg);

  // Coefficient with nonzero first and mixed derivatives; the curvature is
  // tensorial so the choice only tests the cancellation.
  auto coefficient = [&](double t, double s) {
    return sigma0 * (one + one * Complex{0.3 * t, 0.0} + one * Complex{0.0, 0.7 * s} + one * Complex{0.2 * t * s, 0.0});
  };
  auto flow = [&](double t, double s) {
    const Matrix m = (a.data() * Complex{t, 0.0}).exp() * (b.data() * Complex{s, 0.0}).exp();
    return DoubledMatrix(alg, m);
  };
  auto point = [&](double t, double s) {
    const DoubledVector xv = flow(t, s) * x0.vector();
    return DoubledMatrix(alg, xv.data() * xv.data().adjoint()) * DoubledMatrix::rho(alg);
  };
  auto section = [&](double t, double s) { return flow(t, s) * x0.vector() * coefficient(t, s); };

  // D_s sigma(t, s) = q(t, s) d_s sigma, then D_t of that at the origin, and
  // symmetrically.
  auto ds_section = [&](double t, double s) {
    const DoubledVector rate = fd::derivative([&](double u) { return section(t, u); }, s, h);
    return point(t, s) * rate;
  };
  auto dt_section = [&](double t, double s) {
    const DoubledVector rate = fd::derivative([&](double u) { return section(u, s); }, t, h);
    return point(t, s) * rate;
  };
  const DoubledMatrix q0 = point(0.0, 0.0);
  const DoubledVector dt_ds = q0 * fd::derivative([&](double t) { return ds_section(t, 0.0); }, 0.0, h);
  const DoubledVector ds_dt = q0 * fd::derivative([&](double s) { return dt_section(0.0, s); }, 0.0, h);

  const AlgebraElement applied = theta(x0.vector(), dt_ds - ds_dt);
  return {x0, applied * inverse(sigma0)};
}

}  // namespace opdisk
