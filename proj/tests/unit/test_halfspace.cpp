#include <cmath>

#include "doctest.h"
#include "opdisk/halfspace.hpp"
#include "opdisk/kahler.hpp"
#include "oracles.hpp"

using namespace opdisk;

namespace {

Complex entry(const AlgebraElement& a, int i = 0) { return a.data()(i, i); }

HalfSpacePoint scalar_point(Complex zeta) { return HalfSpacePoint::from_zeta(oracle::scalar(zeta)); }

HalfSpacePoint random_point(const Algebra& alg, std::uint64_t seed) {
  const AlgebraElement s = sample(alg, seed + 1);
  return {sample(alg, seed, {SampleStyle::kHermitian}),
          real_part(s * s.adjoint()) + AlgebraElement::identity(alg) * Complex{0.5, 0.0}};
}

}  // namespace

TEST_SUITE("halfspace") {

TEST_CASE("half-space points") {
  CHECK_THROWS_AS(scalar_point({1.0, -1.0}), Error);
  try {
    (void)scalar_point({1.0, 0.0});
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotInHalfSpace);
  }
  const HalfSpacePoint h = random_point(Algebra::matrix(3), 1);
  CHECK(op_norm(HalfSpacePoint::from_zeta(h.zeta()).x() - h.x()) <= 1e-15);
}

TEST_CASE("Cayley transform") {
  SUBCASE("z = 0 maps to i") {
    const HalfSpacePoint h = mobius_to_halfspace(AlgebraElement::zero(Algebra::matrix(2)));
    CHECK(op_norm(h.zeta() - AlgebraElement::identity(Algebra::matrix(2)) * kI) <= 1e-15);
  }
  SUBCASE("round trips") {
    const Algebra alg = Algebra::matrix(3);
    for (std::uint64_t s = 0; s < 50; ++s) {
      const HalfSpacePoint h = random_point(alg, s);
      CHECK(op_norm(mobius_to_halfspace(mobius_to_disk(h)).zeta() - h.zeta()) <= 1e-9);
      const AlgebraElement z = sample(alg, 100 + s, {SampleStyle::kContraction, 0.9});
      CHECK(op_norm(mobius_to_disk(mobius_to_halfspace(z)) - z) <= 1e-9);
    }
  }
  SUBCASE("differential matches a difference quotient") {
    const Algebra alg = Algebra::matrix(3);
    const HalfSpacePoint h = random_point(alg, 7);
    const AlgebraElement v = sample(alg, 8, {SampleStyle::kHermitian});
    const AlgebraElement rate = oracle::central(
        [&](double t) { return mobius_to_disk(HalfSpacePoint(h.x() + v * Complex{t, 0.0}, h.y())); }, 0.0, 1e-5);
    CHECK(op_norm(mobius_differential(h, v) - rate) <= 1e-7);
  }
  SUBCASE("outside the disk") {
    CHECK_THROWS_AS(mobius_to_halfspace(oracle::scalar(1.0)), Error);
  }
}

TEST_CASE("theta_H and the sphere K_H") {
  SUBCASE("x = (1, i/2)") {
    const DoubledVector x(oracle::scalar(1.0), oracle::scalar({0.0, 0.5}));
    CHECK(std::abs(entry(theta_h(x, x)) - 1.0) <= 1e-15);
    const DoubledVector xp = x_perp(x);
    CHECK(std::abs(entry(xp.x1()) - Complex{0.0, 1.0}) <= 1e-15);
    CHECK(std::abs(entry(xp.x2()) - 0.5) <= 1e-15);
    CHECK(std::abs(entry(theta_h(xp, xp)) + 1.0) <= 1e-15);
  }
  SUBCASE("x_perp on random K_H points") {
    const Algebra alg = Algebra::matrix(3);
    const auto one = AlgebraElement::identity(alg);
    for (std::uint64_t s = 0; s < 100; ++s) {
      const DoubledVector x = halfspace_section(random_point(alg, s));
      const DoubledVector xp = x_perp(x);
      CHECK(op_norm(theta_h(x, xp)) <= 1e-10);
      CHECK(op_norm(theta_h(xp, xp) + one) <= 1e-10);
    }
  }
  SUBCASE("intertwined with theta by U") {
    const Algebra alg = Algebra::matrix(3);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
      const DoubledVector x(alg, oracle::gaussian(6, 3, rng));
      const DoubledVector y(alg, oracle::gaussian(6, 3, rng));
      CHECK(op_norm(theta_h(to_halfspace_frame(x), to_halfspace_frame(y)) - theta(x, y)) <= 1e-12);
    }
  }
  SUBCASE("x_perp outside K_H") {
    const DoubledVector bad(oracle::scalar(1.0), oracle::scalar(1.0));
    try {
      (void)x_perp(bad);
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNotOnSphere);
    }
  }
}

TEST_CASE("half-space section and lift") {
  SUBCASE("zeta = i") {
    const DoubledVector x = halfspace_section(scalar_point({0.0, 1.0}));
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(entry(x.x1()) - r) <= 1e-15);
    CHECK(std::abs(entry(x.x2()) - Complex{0.0, r}) <= 1e-15);
  }
  SUBCASE("scalar lift at zeta = i, v = 1") {
    const HalfSpacePoint at = scalar_point({0.0, 1.0});
    const DoubledVector lift = halfspace_lift(at, {at, oracle::scalar(1.0)});
    const double r = 1.0 / std::sqrt(2.0);
    const Complex w{0.0, r};
    CHECK(std::abs(entry(lift.x1()) - 0.5 * w) <= 1e-15);
    CHECK(std::abs(entry(lift.x2()) - (Complex{0.0, 0.5} - Complex{0.0, 1.0}) * w) <= 1e-15);
  }
  SUBCASE("zero tangent") {
    const HalfSpacePoint at = random_point(Algebra::matrix(2), 3);
    CHECK(op_norm(halfspace_lift(at, {at, AlgebraElement::zero(at.algebra())})) == 0.0);
  }
  SUBCASE("random points") {
    const Algebra alg = Algebra::matrix(3);
    const auto one = AlgebraElement::identity(alg);
    for (std::uint64_t s = 0; s < 50; ++s) {
      const HalfSpacePoint zeta = random_point(alg, s);
      const DoubledVector x = halfspace_section(zeta);
      CHECK(op_norm(theta_h(x, x) - one) <= 1e-10);
      CHECK(op_norm(x.x2() * inverse(x.x1()) - zeta.zeta()) <= 1e-10);
      const DoubledVector lift = halfspace_lift(zeta, {zeta, sample(alg, 200 + s)});
      CHECK(op_norm(x * theta_h(x, lift)) <= 1e-9);
    }
  }
}

TEST_CASE("trace product") {
  const Valuation nu = Valuation::canonical(Algebra::scalar());
  const HalfSpacePoint at = scalar_point({0.0, 1.0});
  SUBCASE("zeta = i, v = w = 1") {
    const HalfTangent v{at, oracle::scalar(1.0)};
    CHECK(std::abs(entry(trace_product(nu, v, v)) + 0.25) <= 1e-15);
  }
  SUBCASE("negative on the diagonal") {
    const Algebra alg = Algebra::matrix(3);
    const Valuation n3 = Valuation::canonical(alg);
    for (std::uint64_t s = 0; s < 20; ++s) {
      const HalfSpacePoint h = random_point(alg, s);
      const HalfTangent v{h, sample(alg, 50 + s)};
      CHECK(entry(trace_product(n3, v, v)).real() <= 1e-14);
    }
  }
  SUBCASE("proportional to the disk product") {
    const Algebra alg = Algebra::matrix(3);
    const Valuation n3 = Valuation::canonical(alg);
    for (std::uint64_t s = 0; s < 20; ++s) {
      const HalfSpacePoint h = random_point(alg, s);
      const HalfTangent v{h, sample(alg, 60 + s)};
      const HalfTangent w{h, sample(alg, 70 + s)};
      const AlgebraElement z = mobius_to_disk(h);
      const AlgebraElement disk = valuate(n3, hilbertian_product(disk_tangent(z, mobius_differential(h, v.v)),
                                                                 disk_tangent(z, mobius_differential(h, w.v)))
                                                  .value.matrix());
      const Complex tp = entry(trace_product(n3, v, w));
      CHECK(std::abs(entry(disk) + tp) <= 1e-9 * std::max(1.0, std::abs(tp)));
    }
  }
  SUBCASE("mismatched base points") {
    const HalfTangent v{at, oracle::scalar(1.0)};
    const HalfTangent w{scalar_point({0.0, 2.0}), oracle::scalar(1.0)};
    try {
      (void)trace_product(nu, v, w);
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kBasePointMismatch);
    }
  }
}

TEST_CASE("Liouville form") {
  const Valuation nu = Valuation::canonical(Algebra::scalar());
  SUBCASE("zeta = 1 + i, v = 1") {
    const HalfSpacePoint at = scalar_point({1.0, 1.0});
    CHECK(std::abs(entry(liouville(nu, at, {at, oracle::scalar(1.0)})) - 1.0) <= 1e-15);
  }
  SUBCASE("purely imaginary zeta") {
    const HalfSpacePoint at = scalar_point({0.0, 3.0});
    CHECK(std::abs(entry(liouville(nu, at, {at, oracle::scalar({2.0, 1.0})}))) == 0.0);
  }
  SUBCASE("linear in v") {
    const Algebra alg = Algebra::matrix(3);
    const Valuation n3 = Valuation::canonical(alg);
    for (std::uint64_t s = 0; s < 20; ++s) {
      const HalfSpacePoint h = random_point(alg, s);
      const AlgebraElement v = sample(alg, 30 + s), w = sample(alg, 40 + s);
      const AlgebraElement lhs = liouville(n3, h, {h, v * Complex{0.3, 0.0} + w * Complex{-1.2, 0.0}});
      const AlgebraElement rhs = liouville(n3, h, {h, v}) * Complex{0.3, 0.0} +
                                 liouville(n3, h, {h, w}) * Complex{-1.2, 0.0};
      CHECK(op_norm(lhs - rhs) <= 1e-12 * std::max(1.0, op_norm(lhs)));
    }
  }
}

TEST_CASE("exterior derivative of the Liouville form") {
  const Valuation nu = Valuation::canonical(Algebra::scalar());
  SUBCASE("zeta = i, v = 1, w = i") {
    const HalfSpacePoint at = scalar_point({0.0, 1.0});
    const LiouvilleDerivative d =
        d_liouville_fd(nu, at, {at, oracle::scalar(1.0)}, {at, oracle::scalar({0.0, 1.0})});
    CHECK(std::abs(entry(d.closed_form) - 1.0) <= 1e-15);
    CHECK(std::abs(entry(d.finite_difference) - 1.0) <= 1e-8);
  }
  SUBCASE("closed form against an independent difference quotient") {
    const Algebra alg = Algebra::matrix(3);
    const Valuation n3 = Valuation::canonical(alg);
    for (std::uint64_t s = 0; s < 30; ++s) {
      const HalfSpacePoint h = random_point(alg, s);
      const AlgebraElement vr = sample(alg, 100 + s, {SampleStyle::kHermitian});
      const AlgebraElement vi = sample(alg, 200 + s, {SampleStyle::kHermitian}) * Complex{0.05, 0.0};
      const AlgebraElement wr = sample(alg, 300 + s, {SampleStyle::kHermitian});
      const AlgebraElement wi = sample(alg, 400 + s, {SampleStyle::kHermitian}) * Complex{0.05, 0.0};
      const HalfTangent v{h, vr + vi * kI};
      const HalfTangent w{h, wr + wi * kI};
      const LiouvilleDerivative d = d_liouville_fd(n3, h, v, w);
      CHECK(op_norm(d.closed_form - d.finite_difference) <= 1e-5);
      // beta(u) = nu(y^{-1} x y^{-1} Im u), differentiated by plain central differences.
      auto beta = [&](double t, const AlgebraElement& xdir, const AlgebraElement& ydir, const AlgebraElement& im) {
        const AlgebraElement x = h.x() + xdir * Complex{t, 0.0};
        const AlgebraElement yi = inverse(h.y() + ydir * Complex{t, 0.0});
        return valuate(n3, yi * x * yi * im);
      };
      const AlgebraElement dv = oracle::central([&](double t) { return beta(t, vr, vi, wi); }, 0.0, 1e-5);
      const AlgebraElement dw = oracle::central([&](double t) { return beta(t, wr, wi, vi); }, 0.0, 1e-5);
      CHECK(op_norm(d.closed_form - (dv - dw)) <= 1e-6);
      // d alpha = -4 Im of the trace product.
      CHECK(op_norm(d.closed_form + imag_part(trace_product(n3, v, w)) * Complex{4.0, 0.0}) <= 1e-10);
    }
  }
  SUBCASE("stencil leaving H") {
    const HalfSpacePoint at = scalar_point({0.0, 1.0});
    try {
      (void)d_liouville_fd(nu, at, {at, oracle::scalar({0.0, 1e4})}, {at, oracle::scalar(1.0)}, 1e-4);
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kStepOutOfHalfSpace);
    }
  }
}

TEST_CASE("positive cone bracket") {
  SUBCASE("y = x1 = x2 = 1") {
    const Valuation nu = Valuation::canonical(Algebra::scalar());
    const auto one = oracle::scalar(1.0);
    CHECK(std::abs(entry(spd_bracket(nu, one, one, one)) - 1.0) <= 1e-15);
  }
  SUBCASE("congruence invariance and the trace relation") {
    const Algebra alg = Algebra::matrix(3);
    const Valuation nu = Valuation::canonical(alg);
    for (std::uint64_t s = 0; s < 50; ++s) {
      const HalfSpacePoint h = random_point(alg, s);
      const AlgebraElement x1 = sample(alg, 100 + s, {SampleStyle::kHermitian});
      const AlgebraElement x2 = sample(alg, 200 + s, {SampleStyle::kHermitian});
      const AlgebraElement g = AlgebraElement::identity(alg) + sample(alg, 300 + s) * Complex{0.5, 0.0};
      const AlgebraElement base = spd_bracket(nu, h.y(), x1, x2);
      const AlgebraElement moved =
          spd_bracket(nu, real_part(congruence(g, h.y())), congruence(g, x1), congruence(g, x2));
      CHECK(op_norm(moved - base) <= 1e-9 * std::max(1.0, op_norm(base)));
      const HalfSpacePoint axis(AlgebraElement::zero(alg), h.y());
      const AlgebraElement tp = trace_product(nu, {axis, x1 * kI}, {axis, x2 * kI});
      CHECK(op_norm(tp - base * Complex{-0.25, 0.0}) <= 1e-10);
    }
  }
  SUBCASE("non-positive y") {
    const Valuation nu = Valuation::canonical(Algebra::scalar());
    try {
      (void)spd_bracket(nu, oracle::scalar(-1.0), oracle::scalar(1.0), oracle::scalar(1.0));
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNotPositive);
    }
  }
}

}
