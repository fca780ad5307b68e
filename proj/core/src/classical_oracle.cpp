#include "opdisk/classical_oracle.hpp"

#include <cmath>

#include "opdisk/error.hpp"

namespace opdisk::classical {

namespace {

Complex power(Complex base, int n) {
  Complex out{1.0, 0.0};
  for (int i = 0; i < n; ++i) out *= base;
  return out;
}

}  // namespace

ScalarDiskPoint::ScalarDiskPoint(Complex z) : z_(z) {
  if (!(std::abs(z) < 1.0)) throw Error(ErrorCode::kNotInDisk, "|z| >= 1");
}

ComplexPolynomial::ComplexPolynomial(std::vector<Term> terms) : terms_(std::move(terms)) {
  for (const Term& t : terms_) {
    if (t.z_degree < 0 || t.conj_degree < 0) throw Error(ErrorCode::kConfigError, "negative degree");
  }
}

Complex ComplexPolynomial::operator()(Complex z) const {
  Complex sum{};
  for (const Term& t : terms_) sum += t.coefficient * power(z, t.z_degree) * power(std::conj(z), t.conj_degree);
  return sum;
}

Complex ComplexPolynomial::d_z(Complex z) const {
  Complex sum{};
  for (const Term& t : terms_) {
    if (t.z_degree == 0) continue;
    sum += t.coefficient * static_cast<double>(t.z_degree) * power(z, t.z_degree - 1) *
           power(std::conj(z), t.conj_degree);
  }
  return sum;
}

Complex ComplexPolynomial::d_conj(Complex z) const {
  Complex sum{};
  for (const Term& t : terms_) {
    if (t.conj_degree == 0) continue;
    sum += t.coefficient * static_cast<double>(t.conj_degree) * power(z, t.z_degree) *
           power(std::conj(z), t.conj_degree - 1);
  }
  return sum;
}

Complex poincare_metric(const ScalarDiskPoint& z, Complex a, Complex b) {
  const double d = 1.0 - std::norm(z.z());
  return std::conj(a) * b / (d * d);
}

Complex scalar_connection(const ComplexPolynomial& field, Complex b) { return field.directional(Complex{}, b); }

Complex scalar_moment(const ScalarDiskPoint& z, double alpha, double beta, Complex w) {
  const Complex zz = z.z();
  const double r2 = std::norm(zz);
  const Complex rotation = (w * zz - std::conj(w) * std::conj(zz)) / Complex{0.0, 2.0};
  return (0.5 * (alpha - beta * r2) + rotation) / (1.0 - r2);
}

}  // namespace opdisk::classical
