#pragma once

#include <functional>

#include "opdisk/bundles.hpp"

namespace opdisk {

/// The endomorphism-valued product <X, Y>_q with its matrix split as
/// real + i * imaginary, both Hermitian.
struct HermitianForm {
  FiberEndomorphism value;
  AlgebraElement real;
  AlgebraElement imaginary;
};

/// i_q X = i X (2q - 1).
TangentVector complex_structure(const TangentVector& X);

/// -theta(X x, Y x) in the basis x (sr(q) when omitted).
HermitianForm hilbertian_product(const TangentVector& X, const TangentVector& Y);
HermitianForm hilbertian_product(const TangentVector& X, const TangentVector& Y, const SpherePoint& basis);

/// Im <X, Y>_q taken matrix-wise: (c - c*)/(2i).
FiberEndomorphism symplectic_form(const TangentVector& X, const TangentVector& Y);

/// Tangent vector X . phi whose lift is (X x) a for phi = (x, a).
TangentVector module_action(const TangentVector& X, const FiberEndomorphism& phi);

/// ||lambda_q^{-1} X lambda_q||: X transported to the base point p by the
/// group element lambda_q, then measured in operator norm. Invariant under
/// U(theta).
double finsler_norm(const TangentVector& X);

/// ||lambda_q X lambda_q^{-1}||, the transport written the other way round.
/// Kept for comparison; it is not invariant.
double finsler_norm_conjugate(const TangentVector& X);

using TangentField = std::function<TangentVector(const ProjectionPoint&)>;

/// d/dt X(q(t)) at 0 plus [X_q, [Y, q]], along the orbit curve
/// q(t) = exp(t b) q exp(-t b) with b the horizontal generator of Y. The first
/// term uses refined central differences with step h.
TangentVector manifold_connection(const TangentField& field, const TangentVector& Y, double h = 1e-4);

}  // namespace opdisk
