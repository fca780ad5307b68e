#include "opdisk/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "opdisk/classical_oracle.hpp"
#include "opdisk/finite_difference.hpp"
#include "opdisk/halfspace.hpp"
#include "opdisk/moment.hpp"

namespace opdisk {

// ---------------------------------------------------------------------------
// Configuration

void SuiteConfig::validate() const {
  if (samples < 1) throw Error(ErrorCode::kConfigError, "samples must be >= 1");
  if (!(tol_exact > 0.0) || !(tol_fd > 0.0)) throw Error(ErrorCode::kConfigError, "tolerances must be positive");
  if (!(fd_step > 0.0)) throw Error(ErrorCode::kConfigError, "fd_step must be positive");
}

Suite parse_suite(std::string_view name) {
  if (name == "algebraic") return Suite::kAlgebraic;
  if (name == "differential") return Suite::kDifferential;
  if (name == "scalar_oracle") return Suite::kScalarOracle;
  if (name == "moment") return Suite::kMoment;
  if (name == "halfspace") return Suite::kHalfspace;
  if (name == "all") return Suite::kAll;
  throw Error(ErrorCode::kConfigError, "unknown suite '" + std::string(name) + "'");
}

std::string to_string(Suite suite) {
  switch (suite) {
    case Suite::kAlgebraic: return "algebraic";
    case Suite::kDifferential: return "differential";
    case Suite::kScalarOracle: return "scalar_oracle";
    case Suite::kMoment: return "moment";
    case Suite::kHalfspace: return "halfspace";
    case Suite::kAll: return "all";
  }
  return "unknown";
}

int thread_count_from_env() {
  const char* raw = std::getenv("OPDISK_THREADS");
  if (raw == nullptr) return 1;
  char* end = nullptr;
  const long n = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || n < 1) return 1;
  return static_cast<int>(std::min<long>(n, 256));
}

namespace {

// ---------------------------------------------------------------------------
// Sampling machinery

using Rng = std::mt19937_64;

struct Outcome {
  double error = 0.0;
  std::vector<Complex> values;  // per-sample measurements for constant checks
  std::string failure;
};

constexpr double kFailedError = std::numeric_limits<double>::max();

template <class Body>
std::vector<Outcome> sweep(const SuiteConfig& config, std::uint64_t salt, int count, Body&& body) {
  std::vector<Outcome> out(static_cast<std::size_t>(count));
  auto run_one = [&](int i) {
    std::seed_seq seq{config.seed ^ static_cast<std::uint64_t>(i), salt};
    Rng rng(seq);
    try {
      out[static_cast<std::size_t>(i)] = body(rng, i);
    } catch (const std::exception& e) {
      out[static_cast<std::size_t>(i)] = Outcome{kFailedError, {}, e.what()};
    }
  };
  const int threads = std::min(thread_count_from_env(), count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) run_one(i);
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < count; i += threads) run_one(i);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

CheckReport summarize(std::string name, double tolerance, const std::vector<Outcome>& outcomes) {
  CheckReport r;
  r.check_name = std::move(name);
  r.samples = static_cast<int>(outcomes.size());
  r.tolerance = tolerance;
  std::int64_t failures = 0;
  std::string first_failure;
  for (const Outcome& o : outcomes) {
    r.max_error = std::max(r.max_error, o.error);
    if (!o.failure.empty()) {
      if (failures == 0) first_failure = o.failure;
      ++failures;
    }
  }
  if (failures > 0) {
    r.metadata.emplace_back("exceptions", failures);
    r.metadata.emplace_back("first_exception", first_failure);
  }
  r.passed = failures == 0 && r.max_error <= tolerance;
  return r;
}

Outcome ok(double error) { return Outcome{error, {}, {}}; }

double norm_of(const AlgebraElement& a) { return op_norm(a); }
double norm_of(const DoubledMatrix& m) { return op_norm(m); }
double norm_of(const DoubledVector& v) { return op_norm(v); }

ProjectionPoint random_point(const Algebra& alg, Rng& rng) { return sample_point(alg, rng()); }
/// Tangent samples are scaled to unit operator norm.
TangentVector random_tangent(const ProjectionPoint& q, Rng& rng) {
  const TangentVector X = sample_tangent(q, rng());
  return X * (1.0 / std::max(op_norm(X.matrix()), 1e-300));
}
LieElement random_lie(const Algebra& alg, Rng& rng) { return LieElement::sample(alg, rng()); }

AlgebraElement random_unitary(const Algebra& alg, Rng& rng) {
  return sample(alg, rng(), {SampleStyle::kUnitary});
}

AlgebraElement random_hermitian(const Algebra& alg, Rng& rng) {
  return sample(alg, rng(), {SampleStyle::kHermitian});
}

AlgebraElement random_positive(const Algebra& alg, Rng& rng) {
  const AlgebraElement s = sample(alg, rng()) * Complex{0.7, 0.0};
  return real_part(s * s.adjoint()) + AlgebraElement::identity(alg) * Complex{0.5, 0.0};
}

/// Mean and relative spread of ratios that should be constant.
struct ConstantSummary {
  Complex mean{};
  double spread = 0.0;
  int used = 0;
};

ConstantSummary summarize_constant(const std::vector<Outcome>& outcomes) {
  ConstantSummary s;
  std::vector<Complex> all;
  for (const Outcome& o : outcomes) all.insert(all.end(), o.values.begin(), o.values.end());
  if (all.empty()) return s;
  for (const Complex& c : all) s.mean += c;
  s.mean /= static_cast<double>(all.size());
  double worst = 0.0;
  for (const Complex& c : all) worst = std::max(worst, std::abs(c - s.mean));
  s.spread = worst / std::max(std::abs(s.mean), 1e-300);
  s.used = static_cast<int>(all.size());
  return s;
}

CheckReport constant_check(std::string name, double tolerance, const std::vector<Outcome>& outcomes) {
  CheckReport r = summarize(std::move(name), tolerance, outcomes);
  const ConstantSummary c = summarize_constant(outcomes);
  r.max_error = std::max(r.max_error, c.spread);
  r.metadata.emplace_back("constant_re", c.mean.real());
  r.metadata.emplace_back("constant_im", c.mean.imag());
  r.metadata.emplace_back("ratios_used", static_cast<std::int64_t>(c.used));
  r.passed = r.passed && c.used > 0 && c.spread <= tolerance;
  return r;
}

/// Ratios num/den entry by entry on the (diagonal) carrier, skipping tiny
/// denominators.
std::vector<Complex> entry_ratios(const AlgebraElement& num, const AlgebraElement& den) {
  std::vector<Complex> out;
  for (Eigen::Index i = 0; i < num.data().rows(); ++i) {
    const Complex d = den.data()(i, i);
    if (std::abs(d) > 1e-8) out.push_back(num.data()(i, i) / d);
  }
  return out;
}

void append(std::vector<CheckReport>& into, CheckReport r) { into.push_back(std::move(r)); }

// ---------------------------------------------------------------------------
// Algebraic suite: exact identities at random points.

void algebraic_checks(const SuiteConfig& cfg, std::vector<CheckReport>& out) {
  const Algebra& alg = cfg.algebra;
  const int n = cfg.samples;
  const double tight = cfg.tol_exact * 0.1;

  append(out, summarize("projection_invariants", cfg.tol_exact, sweep(cfg, 101, n, [&](Rng& rng, int) {
    const ProjectionPoint q = q_from_b(sample(alg, rng()));
    const ProjectionResiduals res = projection_residuals(q.matrix());
    const DoubledMatrix lambda = lambda_of_q(q);
    const DoubledMatrix rho = DoubledMatrix::rho(alg);
    const DoubledMatrix p = DoubledMatrix::p(alg);
    const double e1 = norm_of(lambda * rho * lambda - rho);
    const double e2 = norm_of(lambda * p * lambda.inverse() - q.matrix());
    const double e3 = norm_of(proj_from_sphere(section_sr(q)).matrix() - q.matrix());
    return ok(std::max({res.idempotency, res.symmetry, res.positivity, e1, e2, e3}));
  })));

  append(out, summarize("lift_lemma", cfg.tol_exact, sweep(cfg, 102, n, [&](Rng& rng, int) {
    const ProjectionPoint q = random_point(alg, rng);
    const TangentVector X = random_tangent(q, rng);
    const SpherePoint x = rotate(section_sr(q), random_unitary(alg, rng));
    const DoubledVector v = lift_form(X, x);
    const double back = norm_of(tangent_from_lift(x, v).matrix() - X.matrix());
    return ok(std::max(back, norm_of(q.matrix() * v)));
  })));

  append(out, summarize("complex_structure_square", tight, sweep(cfg, 103, n, [&](Rng& rng, int) {
    const TangentVector X = random_tangent(random_point(alg, rng), rng);
    return ok(norm_of(complex_structure(complex_structure(X)).matrix() + X.matrix()));
  })));

  append(out, summarize("complex_structure_compatibility", tight, sweep(cfg, 104, n, [&](Rng& rng, int) {
    const ProjectionPoint q = random_point(alg, rng);
    const TangentVector X = random_tangent(q, rng);
    const TangentVector Y = random_tangent(q, rng);
    const FiberEndomorphism iXY = hilbertian_product(complex_structure(X), Y).value;
    const FiberEndomorphism XiY = hilbertian_product(X, complex_structure(Y)).value;
    const AlgebraElement XY = hilbertian_product(X, Y).value.matrix();
    const double compat = norm_of(canonical_form(iXY).matrix() + canonical_form(XiY).matrix());
    return ok(std::max(compat, norm_of(XiY.matrix() - XY * kI)));
  })));

  append(out, summarize("hilbertian_positivity", tight, sweep(cfg, 105, n, [&](Rng& rng, int) {
    const TangentVector X = random_tangent(random_point(alg, rng), rng);
    return ok(std::max(0.0, -min_eigenvalue(hilbertian_product(X, X).value.matrix())));
  })));

  append(out, summarize("hilbertian_basis_change", tight, sweep(cfg, 106, n, [&](Rng& rng, int) {
    const ProjectionPoint q = random_point(alg, rng);
    const TangentVector X = random_tangent(q, rng);
    const TangentVector Y = random_tangent(q, rng);
    const SpherePoint rotated = rotate(section_sr(q), random_unitary(alg, rng));
    return ok(endo_distance(hilbertian_product(X, Y, rotated).value, hilbertian_product(X, Y).value));
  })));

  append(out, summarize("hilbertian_module_linearity", tight, sweep(cfg, 107, n, [&](Rng& rng, int) {
    const ProjectionPoint q = random_point(alg, rng);
    const TangentVector X = random_tangent(q, rng);
    const TangentVector Y = random_tangent(q, rng);
    const FiberEndomorphism phi(section_sr(q), sample(alg, rng()));
    const AlgebraElement lhs = hilbertian_product(X, module_action(Y, phi)).value.matrix();
    const AlgebraElement rhs = hilbertian_product(X, Y).value.matrix() * phi.matrix();
    return ok(norm_of(lhs - rhs));
  })));

  append(out, summarize("curvature_antisymmetry", tight, sweep(cfg, 108, n, [&](Rng& rng, int) {
    const ProjectionPoint q = random_point(alg, rng);
    const TangentVector X = random_tangent(q, rng);
    const TangentVector Y = random_tangent(q, rng);
    return ok(norm_of(curvature(X, Y).matrix() + curvature(Y, X).matrix()));
  })));

  append(out, summarize("curvature_basis_independence", tight, sweep(cfg, 109, n, [&](Rng& rng, int) {
    const ProjectionPoint q = random_point(alg, rng);
    const TangentVector X = random_tangent(q, rng);
    const TangentVector Y = random_tangent(q, rng);
    const SpherePoint rotated = rotate(section_sr(q), random_unitary(alg, rng));
    return ok(endo_distance(curvature(X, Y, rotated), curvature(X, Y)));
  })));

  append(out, summarize("prequantization", cfg.tol_exact, sweep(cfg, 110, n, [&](Rng& rng, int) {
    const ProjectionPoint q = random_point(alg, rng);
    const TangentVector X = random_tangent(q, rng);
    const TangentVector Y = random_tangent(q, rng);
    const AlgebraElement half_i_r = curvature(X, Y).matrix() * Complex{0.0, 0.5};
    return ok(norm_of(half_i_r - symplectic_form(X, Y).matrix()));
  })));

  {
    auto outcomes = sweep(cfg, 111, n, [&](Rng& rng, int) {
      const TangentVector X = random_tangent(random_point(alg, rng), rng);
      const GroupElement m = sample_group(alg, rng());
      const TangentVector moved = act_tangent(m, X);
      Outcome o = ok(std::abs(finsler_norm(moved) - finsler_norm(X)));
      o.values.push_back(std::abs(finsler_norm_conjugate(moved) - finsler_norm_conjugate(X)));
      return o;
    });
    CheckReport r = summarize("finsler_invariance", cfg.tol_exact * 10.0, outcomes);
    double literal = 0.0;
    for (const auto& o : outcomes) {
      for (const auto& v : o.values) literal = std::max(literal, v.real());
    }
    r.metadata.emplace_back("reversed_conjugation_max_invariance_error", literal);
    append(out, std::move(r));
  }

  {
    auto outcomes = sweep(cfg, 112, n, [&](Rng& rng, int) {
      const TangentVector X = random_tangent(random_point(alg, rng), rng);
      const double f = finsler_norm(X);
      const double e = endo_norm(hilbertian_product(X, X).value);
      Outcome o = ok(std::abs(f * f - e) / std::max(f * f, 1e-300));
      o.values.push_back(std::abs(f - e) / std::max(f, 1e-300));
      return o;
    });
    CheckReport r = summarize("finsler_norm_link", cfg.tol_exact * 10.0, outcomes);
    double unsquared = 0.0;
    for (const auto& o : outcomes) {
      for (const auto& v : o.values) unsquared = std::max(unsquared, v.real());
    }
    r.metadata.emplace_back("relation", std::string("finsler_norm^2 = endo_norm(<X,X>)"));
    r.metadata.emplace_back("unsquared_relation_max_relative_error", unsquared);
    append(out, std::move(r));
  }
}

// ---------------------------------------------------------------------------
// Differential suite: closed forms against finite differences.

void differential_checks(const SuiteConfig& cfg, std::vector<CheckReport>& out) {
  const Algebra& alg = cfg.algebra;
  const int n = cfg.samples;
  const double h = cfg.fd_step;
  const auto one = AlgebraElement::identity(alg);

  append(out, summarize("curvature_fd_oracle", cfg.tol_fd, sweep(cfg, 201, n, [&](Rng& rng, int) {
    const ProjectionPoint q = random_point(alg, rng);
    const TangentVector X = random_tangent(q, rng);
    const TangentVector Y = random_tangent(q, rng);
    const AlgebraElement sigma0 = one + sample(alg, rng()) * Complex{0.3, 0.0};
    return ok(endo_distance(curvature_fd_oracle(X, Y, sigma0, h), curvature(X, Y)));
  })));

  append(out, summarize("taut_derivative_fd", cfg.tol_fd, sweep(cfg, 202, n, [&](Rng& rng, int) {
    const ProjectionPoint q = random_point(alg, rng);
    const LieElement a = random_lie(alg, rng);
    const CurveData curve(a, section_sr(q), AlgebraPolynomial({sample(alg, rng()), sample(alg, rng()), sample(alg, rng())}));
    const double t0 = 0.25;
    const DoubledVector rate = fd::derivative([&](double t) { return curve.section(t); }, t0, h);
    const DoubledVector oracle = curve.q(t0).matrix() * rate;
    return ok(norm_of(taut_derivative(curve, t0) - oracle));
  })));

  append(out, summarize("leibniz_rule", cfg.tol_fd * 0.01, sweep(cfg, 203, n, [&](Rng& rng, int) {
    const ProjectionPoint q = random_point(alg, rng);
    const LieElement a = random_lie(alg, rng);
    const SpherePoint x0 = section_sr(q);
    const AlgebraPolynomial lambda({sample(alg, rng()), sample(alg, rng())});
    const AlgebraPolynomial coeff({sample(alg, rng()), sample(alg, rng())});
    const CurveData phi_curve(a, x0, lambda);
    const CurveData sigma_curve(a, x0, coeff);
    const DoubledMatrix q0 = q.matrix();
    // D(phi sigma) by differencing t -> x(t) lambda(t) c(t).
    const DoubledVector d_product =
        q0 * fd::derivative([&](double t) { return phi_curve.x(t).vector() * (lambda(t) * coeff(t)); }, 0.0, h);
    const DoubledVector d_sigma =
        q0 * fd::derivative([&](double t) { return sigma_curve.section(t); }, 0.0, h);
    const FiberEndomorphism phi0(x0, lambda(0.0));
    const DoubledVector lhs = d_product - endo_apply(phi0, d_sigma);
    const DoubledVector rhs = endo_apply(coeff_derivative(phi_curve, 0.0), sigma_curve.section(0.0));
    return ok(norm_of(lhs - rhs));
  })));

  append(out, summarize("moment_gradient", cfg.tol_fd, sweep(cfg, 204, n, [&](Rng& rng, int) {
    const ProjectionPoint q = random_point(alg, rng);
    const LieElement a = random_lie(alg, rng);
    const TangentVector Y = random_tangent(q, rng);
    const GradientCheck g = moment_gradient_check(a, Y, h);
    return ok(endo_distance(g.lhs, g.rhs));
  })));

  append(out, summarize("manifold_connection_tangent", cfg.tol_fd * 0.01, sweep(cfg, 205, n, [&](Rng& rng, int) {
    const ProjectionPoint q = random_point(alg, rng);
    const TangentVector Y = random_tangent(q, rng);
    const std::uint64_t field_seed = rng();
    const TangentField field = [&](const ProjectionPoint& p) { return sample_tangent(p, field_seed); };
    const LieElement b = horizontal_generator(Y);
    const DoubledMatrix rate =
        fd::derivative([&](double t) { return field(act(exp_to_group(b, t), q)).matrix(); }, 0.0, h);
    const DoubledMatrix M = rate + commutator(field(q).matrix(), commutator(Y.matrix(), q.matrix()));
    const double scale = std::max(1.0, norm_of(M));
    const double residual = std::max(norm_of(sharp(M) - M), norm_of(M * q.matrix() + q.matrix() * M - M));
    return ok(residual / scale);
  })));
}

// ---------------------------------------------------------------------------
// Moment suite.

void moment_checks(const SuiteConfig& cfg, std::vector<CheckReport>& out) {
  const Algebra& alg = cfg.algebra;
  const int n = cfg.samples;
  const Valuation nu = Valuation::canonical(alg);
  const auto one = AlgebraElement::identity(alg);

  append(out, summarize("inf_action_tangent", cfg.tol_exact, sweep(cfg, 301, n, [&](Rng& rng, int) {
    const ProjectionPoint q = random_point(alg, rng);
    const DoubledMatrix X = inf_action(random_lie(alg, rng), q).matrix();
    const double scale = std::max(1.0, norm_of(X));
    return ok(std::max(norm_of(sharp(X) - X), norm_of(X * q.matrix() + q.matrix() * X - X)) / scale);
  })));

  append(out, summarize("moment_equivariance", cfg.tol_exact, sweep(cfg, 302, n, [&](Rng& rng, int) {
    const ProjectionPoint q = random_point(alg, rng);
    const LieElement a = random_lie(alg, rng);
    const GroupElement m = sample_group(alg, rng());
    const LieElement moved = LieElement::project(m.matrix() * a.matrix() * sharp(m.matrix()));
    // Bases x and m x are matched by the action; canonical bases at q and
    // m q m^{-1} differ from them by fiber unitaries.
    const SpherePoint x = section_sr(q);
    const FiberEndomorphism before = moment_map(a, q, x).value;
    const FiberEndomorphism after = moment_map(moved, act(m, q), act_sphere(m, x)).value;
    return ok(norm_of(after.matrix() - before.matrix()));
  })));

  {
    auto outcomes = sweep(cfg, 303, n, [&](Rng& rng, int) {
      const ProjectionPoint q = random_point(alg, rng);
      const LieElement a = random_lie(alg, rng);
      const LieElement b = random_lie(alg, rng);
      Outcome o = ok(norm_of(poisson_defect(a, b, q).matrix()));
      o.values.push_back(norm_of(poisson_defect_corrected(a, b, q).matrix()));
      return o;
    });
    CheckReport stated = summarize("poisson_relation", cfg.tol_exact, outcomes);
    stated.metadata.emplace_back("relation", std::string("omega(X_a, X_b) = -f_[a,b] + 2i [f_a, f_b]"));
    CheckReport corrected;
    corrected.check_name = "poisson_relation_sign_corrected";
    corrected.samples = stated.samples;
    corrected.tolerance = cfg.tol_exact;
    for (const auto& o : outcomes) {
      for (const auto& v : o.values) corrected.max_error = std::max(corrected.max_error, v.real());
      if (!o.failure.empty()) corrected.max_error = kFailedError;
    }
    corrected.passed = corrected.max_error <= corrected.tolerance;
    corrected.metadata.emplace_back("relation", std::string("omega(X_a, X_b) = f_[a,b] - 2i [f_a, f_b]"));
    stated.metadata.emplace_back("sign_corrected_max_error", corrected.max_error);
    append(out, std::move(stated));
    append(out, std::move(corrected));
  }

  append(out, summarize("valuated_moment_linearity", cfg.tol_exact * 1e-3, sweep(cfg, 304, n, [&](Rng& rng, int) {
    const ProjectionPoint q = random_point(alg, rng);
    const LieElement a = random_lie(alg, rng);
    const LieElement b = random_lie(alg, rng);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    const double s = coef(rng), t = coef(rng);
    const AlgebraElement lhs = valuated_moment(nu, a * s + b * t, q).value;
    const AlgebraElement rhs = valuated_moment(nu, a, q).value * Complex{s, 0.0} +
                               valuated_moment(nu, b, q).value * Complex{t, 0.0};
    return ok(norm_of(lhs - rhs) / std::max(1.0, norm_of(lhs)));
  })));

  append(out, constant_check("valuated_moment_trace_constant", 1e-4, sweep(cfg, 305, n, [&](Rng& rng, int) {
    const ProjectionPoint q = random_point(alg, rng);
    const ValuatedMoment v = valuated_moment(nu, random_lie(alg, rng), q);
    Outcome o = ok(0.0);
    o.values = entry_ratios(v.value, v.tau);
    return o;
  })));

  append(out, summarize("restricted_image", cfg.tol_exact * 0.1, sweep(cfg, 306, n, [&](Rng& rng, int) {
    const RestrictedImagePoint p = restricted_image(random_point(alg, rng));
    const double sum = norm_of(p.c1 + p.c2 - one);
    const double herm = norm_of(p.c1 - p.c1.adjoint());
    const double floor = std::max(0.0, 1.0 - min_eigenvalue(p.c1));
    return ok(std::max({sum, herm, floor}));
  })));

  append(out, summarize("convexity_witness", cfg.tol_exact, sweep(cfg, 307, n, [&](Rng& rng, int i) {
    static constexpr std::array<double, 5> kWeights{0.0, 0.25, 0.5, 0.75, 1.0};
    const RestrictedImagePoint a = restricted_image(random_point(alg, rng));
    const RestrictedImagePoint b = restricted_image(random_point(alg, rng));
    const ConvexityWitness w = convexity_witness(a, b, kWeights[static_cast<std::size_t>(i) % kWeights.size()]);
    return ok(w.defect / std::max(1.0, norm_of(w.target_c1)));
  })));
}

// ---------------------------------------------------------------------------
// Half-space suite.

HalfSpacePoint random_halfspace_point(const Algebra& alg, Rng& rng) {
  return {random_hermitian(alg, rng), random_positive(alg, rng)};
}

/// Tangent vector whose imaginary part is at most y_min/10 in norm.
HalfTangent random_half_tangent(const HalfSpacePoint& at, Rng& rng) {
  const Algebra& alg = at.algebra();
  AlgebraElement real = random_hermitian(alg, rng);
  AlgebraElement imag = random_hermitian(alg, rng);
  const double cap = 0.1 * min_eigenvalue(at.y());
  const double size = norm_of(imag);
  if (size > cap) imag = imag * Complex{cap / size, 0.0};
  return {at, real + imag * kI};
}

void halfspace_checks(const SuiteConfig& cfg, std::vector<CheckReport>& out) {
  const Algebra& alg = cfg.algebra;
  const int n = cfg.samples;
  const Valuation nu = Valuation::canonical(alg);
  const auto one = AlgebraElement::identity(alg);
  const double tight = cfg.tol_exact * 0.1;

  append(out, summarize("mobius_round_trip", cfg.tol_exact, sweep(cfg, 401, n, [&](Rng& rng, int) {
    const HalfSpacePoint h = random_halfspace_point(alg, rng);
    const AlgebraElement z = mobius_to_disk(h);
    const double forward = norm_of(mobius_to_halfspace(z).zeta() - h.zeta());
    const AlgebraElement w = sample(alg, rng(), {SampleStyle::kContraction, 0.9});
    const double backward = norm_of(mobius_to_disk(mobius_to_halfspace(w)) - w);
    return ok(std::max(forward, backward));
  })));

  append(out, summarize("theta_h_cayley_intertwining", tight, sweep(cfg, 402, n, [&](Rng& rng, int) {
    const DoubledVector x(sample(alg, rng()), sample(alg, rng()));
    const DoubledVector y(sample(alg, rng()), sample(alg, rng()));
    const double form = norm_of(theta_h(to_halfspace_frame(x), to_halfspace_frame(y)) - theta(x, y));
    // K maps into K_H.
    const SpherePoint k = section_sr(random_point(alg, rng));
    const DoubledVector kh = to_halfspace_frame(k.vector());
    return ok(std::max(form, norm_of(theta_h(kh, kh) - one)));
  })));

  append(out, summarize("halfspace_section_sphere", tight, sweep(cfg, 403, n, [&](Rng& rng, int) {
    const HalfSpacePoint zeta = random_halfspace_point(alg, rng);
    const DoubledVector x = halfspace_section(zeta);
    const double sphere = norm_of(theta_h(x, x) - one);
    const double fibration = norm_of(x.x2() * inverse(x.x1()) - zeta.zeta());
    return ok(std::max(sphere, fibration));
  })));

  append(out, summarize("x_perp_pair", tight, sweep(cfg, 404, n, [&](Rng& rng, int) {
    const DoubledVector x = halfspace_section(random_halfspace_point(alg, rng));
    const DoubledVector xp = x_perp(x);
    return ok(std::max(norm_of(theta_h(xp, xp) + one), norm_of(theta_h(x, xp))));
  })));

  append(out, summarize("halfspace_lift_nullspace", cfg.tol_exact, sweep(cfg, 405, n, [&](Rng& rng, int) {
    const HalfSpacePoint zeta = random_halfspace_point(alg, rng);
    const HalfTangent v{zeta, sample(alg, rng())};
    const DoubledVector x = halfspace_section(zeta);
    const DoubledVector lift = halfspace_lift(zeta, v);
    return ok(norm_of(x * theta_h(x, lift)));
  })));

  append(out, summarize("liouville_exterior_derivative", cfg.tol_fd * 0.1, sweep(cfg, 406, n, [&](Rng& rng, int) {
    const HalfSpacePoint zeta = random_halfspace_point(alg, rng);
    const HalfTangent v = random_half_tangent(zeta, rng);
    const HalfTangent w = random_half_tangent(zeta, rng);
    const LiouvilleDerivative d = d_liouville_fd(nu, zeta, v, w, cfg.fd_step);
    return ok(norm_of(d.closed_form - d.finite_difference));
  })));

  append(out, constant_check("liouville_symplectic_constant", 1e-4, sweep(cfg, 407, n, [&](Rng& rng, int) {
    const HalfSpacePoint zeta = random_halfspace_point(alg, rng);
    const HalfTangent v = random_half_tangent(zeta, rng);
    const HalfTangent w = random_half_tangent(zeta, rng);
    const AlgebraElement d = d_liouville_fd(nu, zeta, v, w, cfg.fd_step).closed_form;
    Outcome o = ok(0.0);
    o.values = entry_ratios(d, imag_part(trace_product(nu, v, w)));
    return o;
  })));

  append(out, constant_check("disk_product_constant", 1e-4, sweep(cfg, 408, n, [&](Rng& rng, int) {
    const HalfSpacePoint h = random_halfspace_point(alg, rng);
    const HalfTangent v{h, sample(alg, rng())};
    const HalfTangent w{h, sample(alg, rng())};
    const AlgebraElement z = mobius_to_disk(h);
    const TangentVector X = disk_tangent(z, mobius_differential(h, v.v));
    const TangentVector Y = disk_tangent(z, mobius_differential(h, w.v));
    const AlgebraElement disk = valuate(nu, hilbertian_product(X, Y).value.matrix());
    Outcome o = ok(0.0);
    o.values = entry_ratios(disk, trace_product(nu, v, w));
    return o;
  })));

  append(out, summarize("spd_bracket_invariance", cfg.tol_exact, sweep(cfg, 409, n, [&](Rng& rng, int) {
    const AlgebraElement y = random_positive(alg, rng);
    const AlgebraElement x1 = random_hermitian(alg, rng);
    const AlgebraElement x2 = random_hermitian(alg, rng);
    const AlgebraElement g = one + sample(alg, rng()) * Complex{0.5, 0.0};
    const AlgebraElement moved =
        spd_bracket(nu, real_part(congruence(g, y)), congruence(g, x1), congruence(g, x2));
    const AlgebraElement base = spd_bracket(nu, y, x1, x2);
    return ok(norm_of(moved - base) / std::max(1.0, norm_of(base)));
  })));

  append(out, summarize("spd_bracket_trace_relation", tight, sweep(cfg, 410, n, [&](Rng& rng, int) {
    const AlgebraElement y = random_positive(alg, rng);
    const AlgebraElement x1 = random_hermitian(alg, rng);
    const AlgebraElement x2 = random_hermitian(alg, rng);
    const HalfSpacePoint at(AlgebraElement::zero(alg), y);
    const AlgebraElement lhs = trace_product(nu, {at, x1 * kI}, {at, x2 * kI});
    const AlgebraElement rhs = spd_bracket(nu, y, x1, x2) * Complex{-0.25, 0.0};
    return ok(norm_of(lhs - rhs));
  })));
}

// ---------------------------------------------------------------------------
// Scalar oracle suite: the general machinery at A = C (and per component for
// commutative algebras) against the classical closed forms.

std::complex<double> scalar_of(const AlgebraElement& a, int i = 0) { return a.data()(i, i); }

classical::ComplexPolynomial random_field(Rng& rng) {
  std::normal_distribution<double> g;
  std::vector<classical::ComplexPolynomial::Term> terms;
  for (int j = 0; j <= 2; ++j) {
    for (int k = 0; j + k <= 2; ++k) terms.push_back({j, k, Complex{g(rng), g(rng)}});
  }
  return classical::ComplexPolynomial(std::move(terms));
}

Complex random_disk_complex(Rng& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(rng));
  return std::polar(r, 2.0 * std::numbers::pi * u(rng));
}

Complex random_complex(Rng& rng) {
  std::normal_distribution<double> g;
  return {g(rng), g(rng)};
}

void scalar_oracle_checks(const SuiteConfig& cfg, std::vector<CheckReport>& out) {
  const Algebra scalar = Algebra::scalar();
  const int n = cfg.samples;
  const double tight = cfg.tol_exact * 0.1;
  auto element = [&](Complex c) { return AlgebraElement::constant(scalar, c); };

  append(out, summarize("scalar_hilbertian_product", tight, sweep(cfg, 501, n, [&](Rng& rng, int i) {
    Complex z = random_disk_complex(rng, 0.9), a = random_complex(rng), b = random_complex(rng);
    double fixed = 0.0;
    if (i == 0) {
      z = 0.5, a = 1.0, b = 1.0;
    }
    const AlgebraElement general =
        hilbertian_product(disk_tangent(element(z), element(a)), disk_tangent(element(z), element(b))).value.matrix();
    if (i == 0) fixed = std::abs(scalar_of(general) - 16.0 / 9.0);
    const Complex oracle = classical::poincare_metric(classical::ScalarDiskPoint(z), a, b);
    return ok(std::max(fixed, std::abs(scalar_of(general) - oracle)));
  })));

  append(out, summarize("scalar_manifold_connection", cfg.tol_fd * 0.01, sweep(cfg, 502, n, [&](Rng& rng, int) {
    const classical::ComplexPolynomial a = random_field(rng);
    const Complex b = random_complex(rng);
    const TangentField field = [&](const ProjectionPoint& p) {
      const AlgebraElement z = disk_coords(p);
      return disk_tangent(z, element(a(scalar_of(z))));
    };
    const TangentVector Y = disk_tangent(element(0.0), element(b));
    const TangentVector nabla = manifold_connection(field, Y, cfg.fd_step);
    const Complex general = scalar_of(disk_differential(nabla));
    return ok(std::abs(general - classical::scalar_connection(a, b)));
  })));

  append(out, summarize("scalar_moment_map", tight, sweep(cfg, 503, n, [&](Rng& rng, int i) {
    std::normal_distribution<double> g;
    Complex z = random_disk_complex(rng, 0.9), w = random_complex(rng);
    const double alpha = g(rng), beta = g(rng);
    double fixed = 0.0;
    if (i == 0) z = 0.0;
    const LieElement a(element(Complex{0.0, alpha}), element(Complex{0.0, beta}), element(std::conj(w)));
    const Complex general = scalar_of(moment_map(a, disk_point(element(z))).value.matrix());
    if (i == 0) fixed = std::abs(general - alpha / 2.0);
    const Complex oracle = classical::scalar_moment(classical::ScalarDiskPoint(z), alpha, beta, w);
    return ok(std::max(fixed, std::abs(general - oracle)));
  })));

  if (cfg.algebra.kind() != Algebra::Kind::kCommutative) return;

  const Algebra& alg = cfg.algebra;
  const int k = alg.dim();
  auto diag = [&](const std::vector<Complex>& v) { return AlgebraElement::diagonal(alg, v); };

  append(out, summarize("componentwise_hilbertian_product", tight, sweep(cfg, 504, n, [&](Rng& rng, int) {
    std::vector<Complex> z(k), a(k), b(k);
    for (int j = 0; j < k; ++j) z[j] = random_disk_complex(rng, 0.9), a[j] = random_complex(rng), b[j] = random_complex(rng);
    const AlgebraElement general =
        hilbertian_product(disk_tangent(diag(z), diag(a)), disk_tangent(diag(z), diag(b))).value.matrix();
    double err = 0.0;
    for (int j = 0; j < k; ++j) {
      err = std::max(err, std::abs(scalar_of(general, j) -
                                   classical::poincare_metric(classical::ScalarDiskPoint(z[j]), a[j], b[j])));
    }
    return ok(err);
  })));

  append(out, summarize("componentwise_moment_map", tight, sweep(cfg, 505, n, [&](Rng& rng, int) {
    std::normal_distribution<double> g;
    std::vector<Complex> z(k), ia(k), ib(k), wc(k);
    std::vector<double> alpha(k), beta(k);
    std::vector<Complex> w(k);
    for (int j = 0; j < k; ++j) {
      z[j] = random_disk_complex(rng, 0.9);
      alpha[j] = g(rng), beta[j] = g(rng), w[j] = random_complex(rng);
      ia[j] = {0.0, alpha[j]}, ib[j] = {0.0, beta[j]}, wc[j] = std::conj(w[j]);
    }
    const LieElement a(diag(ia), diag(ib), diag(wc));
    const AlgebraElement general = moment_map(a, disk_point(diag(z))).value.matrix();
    double err = 0.0;
    for (int j = 0; j < k; ++j) {
      err = std::max(err, std::abs(scalar_of(general, j) -
                                   classical::scalar_moment(classical::ScalarDiskPoint(z[j]), alpha[j], beta[j], w[j])));
    }
    return ok(err);
  })));
}

}  // namespace

// ---------------------------------------------------------------------------

SuiteReport run_suite(const SuiteConfig& config, Suite suite) {
  config.validate();
  SuiteReport report;
  report.config = config;
  report.suite = suite;
  const bool all = suite == Suite::kAll;
  if (all || suite == Suite::kAlgebraic) algebraic_checks(config, report.checks);
  if (all || suite == Suite::kDifferential) differential_checks(config, report.checks);
  if (all || suite == Suite::kScalarOracle) scalar_oracle_checks(config, report.checks);
  if (all || suite == Suite::kMoment) moment_checks(config, report.checks);
  if (all || suite == Suite::kHalfspace) halfspace_checks(config, report.checks);
  report.all_passed = std::all_of(report.checks.begin(), report.checks.end(), [](const CheckReport& c) { return c.passed; });
  return report;
}

std::string to_json(const SuiteReport& report) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["schema"] = 1;
  const SuiteConfig& c = report.config;
  doc["config"] = {{"algebra", c.algebra.to_string()}, {"suite", to_string(report.suite)},
                   {"samples", c.samples},               {"seed", c.seed},
                   {"tol_exact", c.tol_exact},           {"tol_fd", c.tol_fd},
                   {"fd_step", c.fd_step}};
  ordered_json checks = ordered_json::array();
  for (const CheckReport& r : report.checks) {
    ordered_json meta = ordered_json::object();
    for (const auto& [key, value] : r.metadata) {
      std::visit([&](const auto& v) { meta[key] = v; }, value);
    }
    checks.push_back({{"check_name", r.check_name},
                      {"samples", r.samples},
                      {"max_error", r.max_error},
                      {"tolerance", r.tolerance},
                      {"passed", r.passed},
                      {"metadata", std::move(meta)}});
  }
  doc["checks"] = std::move(checks);
  doc["all_passed"] = report.all_passed;
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Moment image sampling

std::vector<MomentImageRow> sample_moment_image(const SuiteConfig& config, int grid) {
  config.validate();
  if (grid < 1) throw Error(ErrorCode::kConfigError, "grid must be >= 1");
  const Algebra& alg = config.algebra;
  const Valuation nu = Valuation::canonical(alg);
  const auto one = AlgebraElement::identity(alg);
  constexpr double kRadius = 0.9;

  auto components = [](const AlgebraElement& a) {
    std::vector<Complex> out;
    for (Eigen::Index i = 0; i < a.data().rows(); ++i) out.push_back(a.data()(i, i));
    return out;
  };
  auto certified = [&](const RestrictedImagePoint& p) {
    const double tol = config.tol_exact;
    return norm_of(p.c1 + p.c2 - one) <= tol && min_eigenvalue(p.c1) >= 1.0 - 0.1 * tol;
  };

  // Lattice in [-r, r]^2 restricted to the closed disk of radius r; the
  // center is always included. Non-scalar algebras multiply by a seeded
  // unitary, which keeps ||z|| = |w|.
  std::vector<Complex> lattice;
  if (grid == 1) {
    lattice.push_back(0.0);
  } else {
    for (int i = 0; i < grid; ++i) {
      for (int j = 0; j < grid; ++j) {
        const Complex w{-kRadius + 2.0 * kRadius * i / (grid - 1), -kRadius + 2.0 * kRadius * j / (grid - 1)};
        if (std::abs(w) <= kRadius + 1e-12) lattice.push_back(w);
      }
    }
    if (grid % 2 == 0) lattice.insert(lattice.begin(), 0.0);
  }

  std::vector<MomentImageRow> rows;
  std::vector<RestrictedImagePoint> images;
  int id = 0;
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    std::seed_seq seq{config.seed ^ static_cast<std::uint64_t>(i), std::uint64_t{601}};
    Rng rng(seq);
    AlgebraElement z = one * lattice[i];
    if (alg.kind() != Algebra::Kind::kScalar) z = sample(alg, rng(), {SampleStyle::kUnitary}) * lattice[i];
    MomentImageRow row;
    row.sample_id = id++;
    row.kind = "point";
    try {
      const RestrictedImagePoint p = restricted_image(disk_point(z));
      row.nu_c1 = components(valuate(nu, p.c1));
      row.nu_c2 = components(valuate(nu, p.c2));
      row.certificate_pass = certified(p);
      images.push_back(p);
    } catch (const Error&) {
      row.certificate_pass = false;
    }
    rows.push_back(std::move(row));
  }

  static constexpr std::array<double, 5> kWeights{0.0, 0.25, 0.5, 0.75, 1.0};
  const int pairs = images.size() < 2 ? 0 : std::max(1, static_cast<int>(images.size()) / 2);
  for (int pair = 0; pair < pairs; ++pair) {
    std::seed_seq seq{config.seed ^ static_cast<std::uint64_t>(pair), std::uint64_t{602}};
    Rng rng(seq);
    std::uniform_int_distribution<std::size_t> pick(0, images.size() - 1);
    const RestrictedImagePoint& a = images[pick(rng)];
    const RestrictedImagePoint& b = images[pick(rng)];
    for (double t : kWeights) {
      MomentImageRow row;
      row.sample_id = id++;
      row.kind = "witness";
      row.t = t;
      try {
        const ConvexityWitness w = convexity_witness(a, b, t);
        row.nu_c1 = components(valuate(nu, w.check.c1));
        row.nu_c2 = components(valuate(nu, w.check.c2));
        row.certificate_pass = w.defect <= config.tol_exact * std::max(1.0, norm_of(w.target_c1)) && certified(w.check);
      } catch (const Error&) {
        row.certificate_pass = false;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string to_csv(const std::vector<MomentImageRow>& rows) {
  std::size_t width = 1;
  for (const auto& r : rows) width = std::max(width, r.nu_c1.size());
  std::ostringstream out;
  out.precision(17);
  out << "sample_id,kind,t";
  const bool single = width == 1;
  for (const char* name : {"nu_c1", "nu_c2"}) {
    for (std::size_t j = 0; j < width; ++j) {
      const std::string base = single ? std::string(name) : std::string(name) + "_" + std::to_string(j);
      out << ',' << base << "_re," << base << "_im";
    }
  }
  out << ",certificate_pass\n";
  for (const auto& r : rows) {
    out << r.sample_id << ',' << r.kind << ',' << r.t;
    for (const auto* values : {&r.nu_c1, &r.nu_c2}) {
      for (std::size_t j = 0; j < width; ++j) {
        if (j < values->size()) {
          out << ',' << (*values)[j].real() << ',' << (*values)[j].imag();
        } else {
          out << ",,";
        }
      }
    }
    out << ',' << (r.certificate_pass ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace opdisk
