#include "opdisk/moment.hpp"

#include <algorithm>

namespace opdisk {

namespace {

const Complex kHalfOverI{0.0, -0.5};  // 1/(2i)

}  // namespace

TangentVector inf_action(const LieElement& a, const ProjectionPoint& q) {
  return {q, commutator(a.matrix(), q.matrix())};
}

MomentValue moment_map(const LieElement& a, const ProjectionPoint& q) { return moment_map(a, q, section_sr(q)); }

MomentValue moment_map(const LieElement& a, const ProjectionPoint& q, const SpherePoint& basis) {
  if (!same_point(proj_from_sphere(basis), q)) throw Error(ErrorCode::kBasePointMismatch, "moment_map");
  const DoubledVector& x = basis.vector();
  return {FiberEndomorphism(basis, theta(x, a.matrix() * x) * kHalfOverI)};
}

GradientCheck moment_gradient_check(const LieElement& a, const TangentVector& Y, double h) {
  const ProjectionPoint& q = Y.base();
  const LieElement b = horizontal_generator(Y);
  const SpherePoint x0 = section_sr(q);
  // x(t) = exp(t b) x0 is a lift of the orbit curve, horizontal at t = 0.
  auto coefficient = [&](double t) {
    const DoubledVector x = exp_to_group(b, t).matrix() * x0.vector();
    return theta(x, a.matrix() * x) * kHalfOverI;
  };
  FiberEndomorphism lhs = coeff_derivative_fd(b, x0, coefficient, 0.0, h);
  FiberEndomorphism rhs = symplectic_form(inf_action(a, q), Y);
  return {std::move(lhs), std::move(rhs)};
}

namespace {

struct PoissonTerms {
  SpherePoint basis;
  AlgebraElement omega;
  AlgebraElement f_bracket;
  AlgebraElement f_commutator;  // [f_a, f_b]
};

PoissonTerms poisson_terms(const LieElement& a, const LieElement& b, const ProjectionPoint& q) {
  const SpherePoint x = section_sr(q);
  const AlgebraElement omega = hilbertian_product(inf_action(a, q), inf_action(b, q), x).imaginary;
  const AlgebraElement fa = moment_map(a, q, x).value.matrix();
  const AlgebraElement fb = moment_map(b, q, x).value.matrix();
  const AlgebraElement fab = moment_map(bracket(a, b), q, x).value.matrix();
  return {x, omega, fab, commutator(fa, fb)};
}

}  // namespace

FiberEndomorphism poisson_defect(const LieElement& a, const LieElement& b, const ProjectionPoint& q) {
  const PoissonTerms t = poisson_terms(a, b, q);
  return {t.basis, t.omega + t.f_bracket - t.f_commutator * Complex{0.0, 2.0}};
}

FiberEndomorphism poisson_defect_corrected(const LieElement& a, const LieElement& b, const ProjectionPoint& q) {
  const PoissonTerms t = poisson_terms(a, b, q);
  return {t.basis, t.omega - t.f_bracket + t.f_commutator * Complex{0.0, 2.0}};
}

ValuatedMoment valuated_moment(const Valuation& nu, const LieElement& a, const ProjectionPoint& q) {
  const AlgebraElement f = moment_map(a, q).value.matrix();
  const DoubledMatrix qa = q.matrix() * a.matrix();
  const AlgebraElement diagonal_sum = qa.block(1, 1) + qa.block(2, 2);
  return {valuate(nu, f), valuate(nu, diagonal_sum) * Complex{0.5, 0.0}};
}

RestrictedImagePoint restricted_image(const ProjectionPoint& q) {
  const AlgebraElement z = disk_coords(q);
  const AlgebraElement zz = z * z.adjoint();
  const AlgebraElement c1 = inverse(AlgebraElement::identity(z.algebra()) - zz);
  return {c1, -(c1 * zz)};
}

ConvexityWitness convexity_witness(const RestrictedImagePoint& a, const RestrictedImagePoint& b, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::kConfigError, "convexity_witness: t must lie in [0, 1]");
  const Algebra& alg = a.c1.algebra();
  require_same_algebra(alg, b.c1.algebra(), "convexity_witness");
  const auto one = AlgebraElement::identity(alg);
  const AlgebraElement c1 = real_part(a.c1 * Complex{t, 0.0} + b.c1 * Complex{1.0 - t, 0.0});
  const AlgebraElement radicand = real_part(one - inverse(c1));
  if (!is_positive(radicand)) {
    throw Error(ErrorCode::kNotRepresentable, "convexity_witness: 1 - c1^{-1} is not positive");
  }
  AlgebraElement z = fun_calc(radicand, SpectralFunction::kSqrt);
  RestrictedImagePoint check = restricted_image(disk_point(z));
  const double defect = std::max(op_norm(check.c1 - c1), op_norm(check.c2 - (one - c1)));
  return {std::move(z), c1, std::move(check), defect};
}

}  // namespace opdisk
