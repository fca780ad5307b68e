#include <array>
#include <random>

#include "doctest.h"
#include "opdisk/algebra.hpp"
#include "oracles.hpp"

using namespace opdisk;

namespace {

AlgebraElement diag2(Complex a, Complex b) {
  const std::array<Complex, 2> v{a, b};
  return AlgebraElement::diagonal(Algebra::matrix(2), v);
}

AlgebraElement random_positive(const Algebra& alg, std::uint64_t seed) {
  const AlgebraElement s = sample(alg, seed);
  return s * s.adjoint() + AlgebraElement::identity(alg) * Complex{0.2, 0.0};
}

}  // namespace

TEST_SUITE("algebra") {

TEST_CASE("parse and print algebras") {
  CHECK(Algebra::parse("matrix:3") == Algebra::matrix(3));
  CHECK(Algebra::parse("commutative:4") == Algebra::commutative(4));
  CHECK(Algebra::parse("scalar") == Algebra::scalar());
  CHECK(Algebra::matrix(5).to_string() == "matrix:5");
  for (const char* bad : {"", "matrix", "matrix:", "matrix:x", "matrix:0", "poly:3", "commutative:-1"}) {
    try {
      (void)Algebra::parse(bad);
      FAIL("accepted " << bad);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kConfigError);
    }
  }
}

TEST_CASE("carrier shape is enforced") {
  CHECK_THROWS_AS(AlgebraElement(Algebra::matrix(2), Matrix::Identity(3, 3)), Error);
  Matrix offdiag = Matrix::Identity(2, 2);
  offdiag(0, 1) = 1.0;
  CHECK_THROWS_AS(AlgebraElement(Algebra::commutative(2), offdiag), Error);
  CHECK_THROWS_AS(AlgebraElement::identity(Algebra::matrix(2)) + AlgebraElement::identity(Algebra::matrix(3)),
                  Error);
}

TEST_CASE("operator norm of diag(2, -1) is 2") {
  CHECK(op_norm(diag2(2.0, -1.0)) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(op_norm(AlgebraElement::identity(Algebra::matrix(4))) == doctest::Approx(1.0));
}

TEST_CASE("C*-identity on random elements") {
  for (const Algebra& alg : {Algebra::matrix(3), Algebra::commutative(4), Algebra::scalar()}) {
    for (std::uint64_t s = 0; s < 200; ++s) {
      const AlgebraElement a = sample(alg, s);
      const double n = op_norm(a);
      CHECK(std::abs(op_norm(a.adjoint() * a) - n * n) <= 1e-9 * n * n);
    }
  }
}

TEST_CASE("functional calculus") {
  const Algebra alg = Algebra::matrix(3);
  SUBCASE("sqrt of identity") {
    const auto one = AlgebraElement::identity(alg);
    CHECK(op_norm(fun_calc(one, SpectralFunction::kSqrt) - one) <= 1e-15);
  }
  SUBCASE("abs of a nilpotent") {
    Matrix g = Matrix::Zero(2, 2);
    g(0, 1) = 2.0;
    const AlgebraElement a = abs_value(AlgebraElement(Algebra::matrix(2), g));
    CHECK(op_norm(a - diag2(0.0, 2.0)) <= 1e-12);
  }
  SUBCASE("agrees with Denman-Beavers on random positive elements") {
    for (std::uint64_t s = 0; s < 50; ++s) {
      const AlgebraElement a = random_positive(alg, s);
      const AlgebraElement r = fun_calc(a, SpectralFunction::kSqrt);
      const Matrix ref = oracle::db_sqrt(a.data());
      CHECK(oracle::norm2(r.data() - ref) <= 1e-9 * oracle::norm2(ref));
      const AlgebraElement ri = fun_calc(a, SpectralFunction::kInvSqrt);
      const auto one = AlgebraElement::identity(alg);
      CHECK(op_norm(ri * r - one) <= 1e-9);
      CHECK(op_norm(r * r - a) <= 1e-9 * op_norm(a));
      CHECK(op_norm(fun_calc(a, SpectralFunction::kInverse) * a - one) <= 1e-9);
    }
  }
  SUBCASE("rejects non-Hermitian input") {
    try {
      (void)fun_calc(sample(alg, 7), SpectralFunction::kSqrt);
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNotHermitian);
    }
  }
  SUBCASE("rejects a singular inverse square root") {
    CHECK_THROWS_AS(fun_calc(diag2(1.0, 0.0), SpectralFunction::kInvSqrt), Error);
  }
  SUBCASE("rejects negative spectrum for sqrt") {
    try {
      (void)fun_calc(diag2(1.0, -0.5), SpectralFunction::kSqrt);
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNotPositive);
    }
  }
}

TEST_CASE("positivity") {
  CHECK(is_positive(AlgebraElement::identity(Algebra::matrix(2))));
  CHECK_FALSE(is_positive(diag2(1.0, -0.5)));
  const Algebra alg = Algebra::matrix(3);
  const auto one = AlgebraElement::identity(alg);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const AlgebraElement z = sample(alg, s, {SampleStyle::kContraction, 0.9});
    CHECK(op_norm(z) <= 0.9 + 1e-12);
    CHECK(is_positive(one - z * z.adjoint()));
  }
}

TEST_CASE("valuation") {
  const Valuation nu = Valuation::canonical(Algebra::matrix(2));
  CHECK(nu.target() == Algebra::scalar());
  CHECK(std::abs(valuate(nu, diag2(1.0, 3.0)).data()(0, 0) - 2.0) <= 1e-15);

  for (const Algebra& alg : {Algebra::matrix(3), Algebra::commutative(3)}) {
    const Valuation v = Valuation::canonical(alg);
    for (std::uint64_t s = 0; s < 200; ++s) {
      const AlgebraElement a = sample(alg, 2 * s);
      const AlgebraElement b = sample(alg, 2 * s + 1);
      CHECK(op_norm(valuate(v, a * b) - valuate(v, b * a)) <= 1e-12 * std::max(1.0, op_norm(a) * op_norm(b)));
      const AlgebraElement pos = valuate(v, a.adjoint() * a);
      CHECK(pos.data().diagonal().real().minCoeff() >= -1e-12);
      CHECK(pos.data().diagonal().imag().cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, op_norm(pos)));
    }
  }
}

TEST_CASE("sampling is deterministic and respects the style") {
  const Algebra alg = Algebra::matrix(4);
  CHECK(sample(alg, 11).data() == sample(alg, 11).data());
  CHECK(sample(alg, 11).data() != sample(alg, 12).data());
  const AlgebraElement h = sample(alg, 3, {SampleStyle::kHermitian});
  CHECK(op_norm(h - h.adjoint()) <= 1e-15);
  const AlgebraElement k = sample(alg, 3, {SampleStyle::kAntiHermitian});
  CHECK(op_norm(k + k.adjoint()) <= 1e-15);
  const AlgebraElement u = sample(alg, 3, {SampleStyle::kUnitary});
  CHECK(op_norm(u * u.adjoint() - AlgebraElement::identity(alg)) <= 1e-12);
  const AlgebraElement d = sample(Algebra::commutative(5), 3);
  CHECK(d.data().isDiagonal());
}

}
