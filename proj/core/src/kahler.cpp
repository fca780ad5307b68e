#include "opdisk/kahler.hpp"

#include "opdisk/finite_difference.hpp"

namespace opdisk {

TangentVector complex_structure(const TangentVector& X) {
  const DoubledMatrix& q = X.base().matrix();
  const DoubledMatrix reflection = q * 2.0 - DoubledMatrix::identity(q.algebra());
  return {X.base(), X.matrix() * reflection * kI};
}

HermitianForm hilbertian_product(const TangentVector& X, const TangentVector& Y) {
  return hilbertian_product(X, Y, section_sr(X.base()));
}

HermitianForm hilbertian_product(const TangentVector& X, const TangentVector& Y, const SpherePoint& basis) {
  if (!same_point(X.base(), Y.base())) throw Error(ErrorCode::kBasePointMismatch, "hilbertian_product");
  const DoubledVector vx = lift_form(X, basis);
  const DoubledVector vy = lift_form(Y, basis);
  const AlgebraElement c = -theta(vx, vy);
  return {FiberEndomorphism(basis, c), real_part(c), imag_part(c)};
}

FiberEndomorphism symplectic_form(const TangentVector& X, const TangentVector& Y) {
  HermitianForm form = hilbertian_product(X, Y);
  return {form.value.basis(), std::move(form.imaginary)};
}

TangentVector module_action(const TangentVector& X, const FiberEndomorphism& phi) {
  const DoubledVector lift = lift_form(X, phi.basis()) * phi.matrix();
  return tangent_from_lift(phi.basis(), lift);
}

double finsler_norm(const TangentVector& X) {
  const DoubledMatrix lambda = lambda_of_q(X.base());
  // lambda_q is theta-unitary and Hermitian, so its inverse is rho lambda_q rho.
  const DoubledMatrix rho = DoubledMatrix::rho(X.base().algebra());
  return op_norm(rho * lambda * rho * X.matrix() * lambda);
}

double finsler_norm_conjugate(const TangentVector& X) {
  const DoubledMatrix lambda = lambda_of_q(X.base());
  const DoubledMatrix rho = DoubledMatrix::rho(X.base().algebra());
  return op_norm(lambda * X.matrix() * rho * lambda * rho);
}

TangentVector manifold_connection(const TangentField& field, const TangentVector& Y, double h) {
  const ProjectionPoint& q = Y.base();
  const LieElement b = horizontal_generator(Y);
  auto along = [&](double t) {
    const GroupElement g = exp_to_group(b, t);
    return field(act(g, q)).matrix();
  };
  const DoubledMatrix rate = fd::derivative(along, 0.0, h);
  const DoubledMatrix Xq = field(q).matrix();
  const DoubledMatrix inner = commutator(Y.matrix(), q.matrix());
  // The difference quotient is tangent only up to O(h^4); the looser
  // tolerance keeps the TangentVector check meaningful at that scale.
  return TangentVector(q, rate + commutator(Xq, inner), 1e-6);
}

}  // namespace opdisk
