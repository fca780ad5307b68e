#include <cmath>

#include "doctest.h"
#include "opdisk/disk_space.hpp"
#include "oracles.hpp"

using namespace opdisk;

namespace {

double dist(const DoubledMatrix& a, const DoubledMatrix& b) { return op_norm(a - b); }

DoubledMatrix scalar_matrix(Complex a, Complex b, Complex c, Complex d) {
  return {oracle::scalar(a), oracle::scalar(b), oracle::scalar(c), oracle::scalar(d)};
}

}  // namespace

TEST_SUITE("disk_space") {

TEST_CASE("q_from_b") {
  SUBCASE("b = 0 gives p") {
    const Algebra alg = Algebra::matrix(2);
    const ProjectionPoint q = q_from_b(AlgebraElement::zero(alg));
    CHECK(dist(q.matrix(), DoubledMatrix::p(alg)) == 0.0);
  }
  SUBCASE("scalar b = 1") {
    const double r = std::sqrt(2.0);
    CHECK(dist(q_from_b(oracle::scalar(1.0)).matrix(), scalar_matrix(2.0, -r, r, -1.0)) <= 1e-14);
  }
  SUBCASE("invariants on matrix(4)") {
    const Algebra alg = Algebra::matrix(4);
    for (std::uint64_t s = 0; s < 50; ++s) {
      const ProjectionPoint q = q_from_b(sample(alg, s));
      const ProjectionResiduals r = projection_residuals(q.matrix());
      CHECK(r.idempotency <= 1e-9);
      CHECK(r.symmetry <= 1e-9);
      CHECK(r.positivity <= 1e-9);
    }
  }
}

TEST_CASE("ProjectionPoint validation") {
  const Algebra alg = Algebra::scalar();
  try {
    ProjectionPoint bad(DoubledMatrix::identity(alg) * Complex{0.5, 0.0});
    FAIL("accepted a non-idempotent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidPoint);
  }
  // 1 - p is a theta-symmetric idempotent with rho(2q - 1) <= 0.
  CHECK_THROWS_AS(ProjectionPoint(DoubledMatrix::identity(alg) - DoubledMatrix::p(alg)), Error);
}

TEST_CASE("lambda_q") {
  SUBCASE("scalar b = 1") {
    const double r = std::sqrt(2.0);
    CHECK(dist(lambda_of_q(q_from_b(oracle::scalar(1.0))), scalar_matrix(r, 1.0, 1.0, r)) <= 1e-14);
  }
  SUBCASE("matches |2q - 1|^{-1/2} computed independently") {
    const Algebra alg = Algebra::matrix(3);
    for (std::uint64_t s = 0; s < 20; ++s) {
      const ProjectionPoint q = sample_point(alg, s, 0.6);
      const Matrix g = 2.0 * q.matrix().data() - Matrix::Identity(6, 6);
      const Matrix ref = oracle::db_sqrt(oracle::db_sqrt(g.adjoint() * g)).inverse();
      CHECK(oracle::norm2(lambda_of_q(q).data() - ref) <= 1e-9 * oracle::norm2(ref));
    }
  }
  SUBCASE("structure identities") {
    const Algebra alg = Algebra::matrix(4);
    const DoubledMatrix rho = DoubledMatrix::rho(alg);
    for (std::uint64_t s = 0; s < 50; ++s) {
      const ProjectionPoint q = sample_point(alg, s);
      const DoubledMatrix l = lambda_of_q(q);
      CHECK(dist(l * rho * l, rho) <= 1e-9);
      CHECK(dist(l * DoubledMatrix::p(alg) * l.inverse(), q.matrix()) <= 1e-9);
      CHECK(dist(l, l.adjoint()) <= 1e-12);
    }
  }
}

TEST_CASE("principal bundle") {
  const Algebra alg = Algebra::matrix(3);
  const auto one = AlgebraElement::identity(alg);
  SUBCASE("e1 projects to p and p has section e1") {
    const SpherePoint e1(DoubledVector::e1(alg));
    CHECK(dist(proj_from_sphere(e1).matrix(), DoubledMatrix::p(alg)) == 0.0);
    CHECK(op_norm(section_sr(ProjectionPoint::base(alg)).vector() - DoubledVector::e1(alg)) <= 1e-15);
  }
  SUBCASE("section of q_from_b(b)") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const AlgebraElement b = sample(alg, s);
      const SpherePoint x = section_sr(q_from_b(b));
      const AlgebraElement c = fun_calc(one + b.adjoint() * b, SpectralFunction::kSqrt);
      CHECK(op_norm(x.vector().x1() - c) <= 1e-10);
      CHECK(op_norm(x.vector().x2() - b) <= 1e-10);
      CHECK(op_norm(theta(x.vector(), x.vector()) - one) <= 1e-10);
      CHECK(dist(proj_from_sphere(x).matrix(), q_from_b(b).matrix()) <= 1e-9);
    }
  }
  SUBCASE("fibers and unitaries") {
    const SpherePoint x = section_sr(sample_point(alg, 3));
    CHECK(op_norm(fiber_unitary(x, x) - one) <= 1e-10);
    const AlgebraElement u = sample(alg, 4, {SampleStyle::kUnitary});
    const SpherePoint y = rotate(x, u);
    CHECK(same_point(proj_from_sphere(x), proj_from_sphere(y)));
    CHECK(op_norm(fiber_unitary(x, y) - u) <= 1e-10);
    CHECK(op_norm(fiber_unitary(y, section_sr(proj_from_sphere(y))) -
                  theta(y.vector(), section_sr(proj_from_sphere(y)).vector())) <= 1e-12);
    const SpherePoint other = section_sr(sample_point(alg, 5));
    try {
      (void)fiber_unitary(x, other);
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kDifferentFibers);
    }
  }
  SUBCASE("sphere validation") {
    CHECK_THROWS_AS(SpherePoint(DoubledVector::e2(alg)), Error);
    CHECK_THROWS_AS(SpherePoint(DoubledVector::e1(alg) * Complex{2.0, 0.0}), Error);
  }
}

TEST_CASE("lift lemma") {
  const Algebra alg = Algebra::matrix(3);
  SUBCASE("codiagonal tangent at p lifts to its lower-left block") {
    const AlgebraElement x21 = sample(alg, 1);
    const auto zero = AlgebraElement::zero(alg);
    const ProjectionPoint p = ProjectionPoint::base(alg);
    // rho X* rho = X forces the upper-right block to be -x21*.
    const TangentVector X(p, DoubledMatrix(zero, -x21.adjoint(), x21, zero));
    const DoubledVector v = lift_form(X, SpherePoint(DoubledVector::e1(alg)));
    CHECK(op_norm(v.x1()) == 0.0);
    CHECK(op_norm(v.x2() - x21) == 0.0);
  }
  SUBCASE("zero tangent lifts to zero") {
    const ProjectionPoint q = sample_point(alg, 2);
    CHECK(op_norm(lift_form(TangentVector::zero(q), section_sr(q))) == 0.0);
    CHECK(op_norm(tangent_from_lift(section_sr(q), DoubledVector::zero(alg)).matrix()) == 0.0);
  }
  SUBCASE("random pairs") {
    for (std::uint64_t s = 0; s < 50; ++s) {
      const ProjectionPoint q = sample_point(alg, s);
      const TangentVector X = sample_tangent(q, 1000 + s);
      const AlgebraElement u = sample(alg, 2000 + s, {SampleStyle::kUnitary});
      const SpherePoint x = rotate(section_sr(q), u);
      const DoubledVector v = lift_form(X, x);
      const double scale = std::max(1.0, op_norm(X.matrix()));
      CHECK(op_norm(q.matrix() * v) <= 1e-9 * scale);
      CHECK(dist(tangent_from_lift(x, v).matrix(), X.matrix()) <= 1e-9 * scale);
      CHECK(op_norm(lift_form(tangent_from_lift(x, v), x) - v) <= 1e-9 * scale);
      CHECK(op_norm(lift_form(X, rotate(x, u)) - v * u) <= 1e-9 * scale);
    }
  }
  SUBCASE("non-horizontal vectors are rejected") {
    const ProjectionPoint q = sample_point(alg, 9);
    const SpherePoint x = section_sr(q);
    try {
      (void)tangent_from_lift(x, x.vector());
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNotHorizontal);
    }
  }
  SUBCASE("bases over another point are rejected") {
    const ProjectionPoint q = sample_point(alg, 10);
    try {
      (void)lift_form(sample_tangent(q, 1), section_sr(sample_point(alg, 11)));
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kBasePointMismatch);
    }
  }
}

TEST_CASE("horizontal generator") {
  const Algebra alg = Algebra::matrix(3);
  CHECK(op_norm(horizontal_generator(TangentVector::zero(sample_point(alg, 1))).matrix()) == 0.0);
  for (std::uint64_t s = 0; s < 30; ++s) {
    const ProjectionPoint q = sample_point(alg, s);
    const TangentVector X = sample_tangent(q, 500 + s);
    const DoubledMatrix a = horizontal_generator(X).matrix();
    const double scale = std::max(1.0, op_norm(X.matrix()));
    CHECK(dist(sharp(a), a * Complex{-1.0, 0.0}) <= 1e-12 * scale);
    CHECK(dist(commutator(a, q.matrix()), X.matrix()) <= 1e-9 * scale * op_norm(q.matrix()));
  }
}

TEST_CASE("group action") {
  const Algebra alg = Algebra::matrix(3);
  const ProjectionPoint q = sample_point(alg, 1);
  CHECK(same_point(act(GroupElement::identity(alg), q), q));
  for (std::uint64_t s = 0; s < 20; ++s) {
    const GroupElement m = exp_to_group(LieElement::sample(alg, s), 0.1 * static_cast<double>(s % 7));
    const ProjectionPoint moved = act(m, q);
    const ProjectionResiduals r = projection_residuals(moved.matrix());
    const double scale = std::pow(op_norm(moved.matrix()), 2);
    CHECK(r.idempotency <= 1e-9 * scale);
    CHECK(r.symmetry <= 1e-9 * scale);
    CHECK(r.positivity <= 1e-9 * scale);
    CHECK(same_point(proj_from_sphere(act_sphere(m, section_sr(q))), moved));
    // The moved tangent vector passes validation at the moved point.
    (void)act_tangent(m, sample_tangent(q, s));
  }
}

TEST_CASE("basis completion") {
  const Algebra alg = Algebra::matrix(3);
  const auto one = AlgebraElement::identity(alg);
  SUBCASE("at e1") {
    const BasisCompletion b = basis_completion(SpherePoint(DoubledVector::e1(alg)));
    CHECK(op_norm(b.range - DoubledVector::e1(alg)) <= 1e-14);
    CHECK(op_norm(b.nullspace - DoubledVector::e2(alg)) <= 1e-14);
  }
  SUBCASE("random points") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const ProjectionPoint q = sample_point(alg, s);
      const SpherePoint x = rotate(section_sr(q), sample(alg, 100 + s, {SampleStyle::kUnitary}));
      const BasisCompletion b = basis_completion(x);
      const double scale = std::pow(std::max(1.0, op_norm(x.vector())), 2);
      CHECK(op_norm(theta(b.range, b.range) - one) <= 1e-9 * scale);
      CHECK(op_norm(theta(b.nullspace, b.nullspace) + one) <= 1e-9 * scale);
      CHECK(op_norm(theta(b.range, b.nullspace)) <= 1e-9 * scale);
      CHECK(op_norm(q.matrix() * b.range - b.range) <= 1e-9 * scale);
      CHECK(op_norm(q.matrix() * b.nullspace) <= 1e-9 * scale);
      CHECK(is_positive(b.range.x1(), 1e-9));
      CHECK(is_positive(b.nullspace.x2(), 1e-9));
      const BasisCompletion again = basis_completion(SpherePoint(b.range));
      CHECK(op_norm(again.range - b.range) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("disk coordinates") {
  SUBCASE("p sits at z = 0") {
    CHECK(op_norm(disk_coords(ProjectionPoint::base(Algebra::matrix(2)))) <= 1e-15);
  }
  SUBCASE("scalar z = 1/2") {
    const DoubledMatrix expected = scalar_matrix(1.0, -0.5, 0.5, -0.25) * Complex{1.0 / 0.75, 0.0};
    CHECK(dist(disk_point(oracle::scalar(0.5)).matrix(), expected) <= 1e-14);
  }
  SUBCASE("round trip and differential") {
    const Algebra alg = Algebra::matrix(3);
    for (std::uint64_t s = 0; s < 20; ++s) {
      const AlgebraElement z = sample(alg, s, {SampleStyle::kContraction, 0.9});
      CHECK(op_norm(disk_coords(disk_point(z)) - z) <= 1e-10);
      const AlgebraElement a = sample(alg, 50 + s);
      CHECK(op_norm(disk_differential(disk_tangent(z, a)) - a) <= 1e-9);
      // Curve z + t a against the tangent vector.
      const DoubledMatrix rate = oracle::central(
          [&](double t) { return disk_point(z + a * Complex{t, 0.0}).matrix(); }, 0.0, 1e-5);
      CHECK(dist(rate, disk_tangent(z, a).matrix()) <= 1e-6 * std::max(1.0, op_norm(rate)));
    }
  }
  SUBCASE("outside the disk") {
    try {
      (void)disk_point(oracle::scalar(1.0));
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNotInDisk);
    }
  }
}

TEST_CASE("sampling") {
  const Algebra alg = Algebra::matrix(3);
  CHECK(dist(sample_point(alg, 4).matrix(), sample_point(alg, 4).matrix()) == 0.0);
  const ProjectionPoint q = sample_point(alg, 4);
  CHECK(dist(sample_tangent(q, 1).matrix(), sample_tangent(q, 1).matrix()) == 0.0);
}

}
