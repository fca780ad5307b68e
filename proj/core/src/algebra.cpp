#include "opdisk/algebra.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>

namespace opdisk {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kSingularSpectrum: return "SingularSpectrum";
    case ErrorCode::kNotPositive: return "NotPositive";
    case ErrorCode::kAlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::kInvalidPoint: return "InvalidPoint";
    case ErrorCode::kDegenerateProjection: return "DegenerateProjection";
    case ErrorCode::kDifferentFibers: return "DifferentFibers";
    case ErrorCode::kBasePointMismatch: return "BasePointMismatch";
    case ErrorCode::kNotHorizontal: return "NotHorizontal";
    case ErrorCode::kNotInGroup: return "NotInGroup";
    case ErrorCode::kNotInDisk: return "NotInDisk";
    case ErrorCode::kNotInHalfSpace: return "NotInHalfSpace";
    case ErrorCode::kNotOnSphere: return "NotOnSphere";
    case ErrorCode::kNotInRange: return "NotInRange";
    case ErrorCode::kNotRepresentable: return "NotRepresentable";
    case ErrorCode::kStepOutOfHalfSpace: return "StepOutOfHalfSpace";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Algebra

Algebra Algebra::matrix(int n) {
  if (n < 1) throw Error(ErrorCode::kConfigError, "matrix algebra needs n >= 1");
  return Algebra(Kind::kMatrix, n);
}

Algebra Algebra::commutative(int k) {
  if (k < 1) throw Error(ErrorCode::kConfigError, "commutative algebra needs k >= 1");
  return Algebra(Kind::kCommutative, k);
}

Algebra Algebra::scalar() { return Algebra(Kind::kScalar, 1); }

Algebra Algebra::parse(std::string_view text) {
  if (text == "scalar") return scalar();
  auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::kConfigError, "unrecognized algebra '" + std::string(text) + "'");
  }
  std::string_view head = text.substr(0, colon);
  std::string_view tail = text.substr(colon + 1);
  int size = 0;
  auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), size);
  if (ec != std::errc() || ptr != tail.data() + tail.size()) {
    throw Error(ErrorCode::kConfigError, "bad algebra size in '" + std::string(text) + "'");
  }
  if (head == "matrix") return matrix(size);
  if (head == "commutative") return commutative(size);
  throw Error(ErrorCode::kConfigError, "unrecognized algebra '" + std::string(text) + "'");
}

std::string Algebra::to_string() const {
  switch (kind_) {
    case Kind::kMatrix: return "matrix:" + std::to_string(dim_);
    case Kind::kCommutative: return "commutative:" + std::to_string(dim_);
    case Kind::kScalar: return "scalar";
  }
  return "?";
}

void require_same_algebra(const Algebra& a, const Algebra& b, std::string_view where) {
  if (!(a == b)) {
    throw Error(ErrorCode::kAlgebraMismatch,
                std::string(where) + ": " + a.to_string() + " vs " + b.to_string());
  }
}

// ---------------------------------------------------------------------------
// AlgebraElement

AlgebraElement::AlgebraElement(Algebra algebra, Matrix data)
    : algebra_(algebra), data_(std::move(data)) {
  const int n = algebra_.dim();
  if (data_.rows() != n || data_.cols() != n) {
    throw Error(ErrorCode::kAlgebraMismatch, "carrier shape does not match " + algebra_.to_string());
  }
  if (algebra_.kind() == Algebra::Kind::kCommutative) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        if (i != j && data_(i, j) != Complex{}) {
          throw Error(ErrorCode::kAlgebraMismatch, "commutative element must be diagonal");
        }
      }
    }
  }
}

AlgebraElement AlgebraElement::zero(const Algebra& algebra) {
  return {algebra, Matrix::Zero(algebra.dim(), algebra.dim())};
}

AlgebraElement AlgebraElement::identity(const Algebra& algebra) {
  return {algebra, Matrix::Identity(algebra.dim(), algebra.dim())};
}

AlgebraElement AlgebraElement::constant(const Algebra& algebra, Complex c) {
  return identity(algebra) * c;
}

AlgebraElement AlgebraElement::diagonal(const Algebra& algebra, std::span<const Complex> values) {
  if (static_cast<int>(values.size()) != algebra.dim()) {
    throw Error(ErrorCode::kAlgebraMismatch, "diagonal: wrong number of entries");
  }
  Matrix m = Matrix::Zero(algebra.dim(), algebra.dim());
  for (int i = 0; i < algebra.dim(); ++i) m(i, i) = values[static_cast<std::size_t>(i)];
  return {algebra, std::move(m)};
}

AlgebraElement AlgebraElement::adjoint() const { return {algebra_, data_.adjoint()}; }

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  require_same_algebra(algebra_, other.algebra_, "operator+");
  data_ += other.data_;
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
  require_same_algebra(algebra_, other.algebra_, "operator-");
  data_ -= other.data_;
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex c) {
  data_ *= c;
  return *this;
}

AlgebraElement operator-(const AlgebraElement& a) { return {a.algebra_, -a.data_}; }

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_algebra(a.algebra_, b.algebra_, "operator*");
  if (a.algebra_.is_commutative()) {
    return {a.algebra_, Matrix(a.data_.diagonal().cwiseProduct(b.data_.diagonal()).asDiagonal())};
  }
  return {a.algebra_, a.data_ * b.data_};
}

// ---------------------------------------------------------------------------
// Norms and spectral calculus

double op_norm(const AlgebraElement& a) {
  if (a.algebra().is_commutative()) return a.data().diagonal().cwiseAbs().maxCoeff();
  Eigen::JacobiSVD<Matrix> svd(a.data());
  return svd.singularValues()(0);
}

double min_singular_value(const AlgebraElement& a) {
  if (a.algebra().is_commutative()) return a.data().diagonal().cwiseAbs().minCoeff();
  Eigen::JacobiSVD<Matrix> svd(a.data());
  return svd.singularValues()(svd.singularValues().size() - 1);
}

AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b) { return a * b - b * a; }

AlgebraElement real_part(const AlgebraElement& a) { return (a + a.adjoint()) * Complex{0.5, 0.0}; }

AlgebraElement imag_part(const AlgebraElement& a) {
  return (a - a.adjoint()) * (Complex{1.0, 0.0} / (2.0 * kI));
}

namespace {

// Symmetrizes a within tolerance and returns its spectral decomposition.
struct Spectrum {
  Eigen::VectorXd values;
  Matrix vectors;  // empty for commutative algebras (eigenbasis is the standard one)
};

Spectrum hermitian_spectrum(const AlgebraElement& a, double hermitian_tol) {
  const double scale = std::max(1.0, a.data().cwiseAbs().maxCoeff());
  const double skew = (a.data() - a.data().adjoint()).cwiseAbs().maxCoeff();
  if (skew > hermitian_tol * scale) {
    throw Error(ErrorCode::kNotHermitian, "element is not Hermitian (skew part " + std::to_string(skew) + ")");
  }
  if (a.algebra().is_commutative()) {
    return {a.data().diagonal().real(), Matrix()};
  }
  const Matrix sym = 0.5 * (a.data() + a.data().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

AlgebraElement rebuild(const AlgebraElement& a, const Spectrum& spec, const Eigen::VectorXd& values) {
  if (a.algebra().is_commutative()) {
    return {a.algebra(), Matrix(values.cast<Complex>().asDiagonal())};
  }
  return {a.algebra(), spec.vectors * values.cast<Complex>().asDiagonal() * spec.vectors.adjoint()};
}

}  // namespace

double min_eigenvalue(const AlgebraElement& a) {
  return hermitian_spectrum(a, 1e-8).values.minCoeff();
}

AlgebraElement fun_calc(const AlgebraElement& a, SpectralFunction f, const FunCalcOptions& options) {
  Spectrum spec = hermitian_spectrum(a, options.hermitian_tol);
  const double scale = std::max(1.0, spec.values.cwiseAbs().maxCoeff());
  Eigen::VectorXd out(spec.values.size());
  for (Eigen::Index i = 0; i < spec.values.size(); ++i) {
    const double v = spec.values(i);
    switch (f) {
      case SpectralFunction::kSqrt:
        if (v < -options.negative_tol * scale) {
          throw Error(ErrorCode::kNotPositive, "sqrt of an element with negative spectrum");
        }
        out(i) = std::sqrt(std::max(v, 0.0));
        break;
      case SpectralFunction::kInvSqrt:
        if (v <= options.singular_tol * scale) {
          throw Error(ErrorCode::kSingularSpectrum, "inv_sqrt needs a spectrum bounded away from 0 from above");
        }
        out(i) = 1.0 / std::sqrt(v);
        break;
      case SpectralFunction::kAbs:
        out(i) = std::abs(v);
        break;
      case SpectralFunction::kInverse:
        if (std::abs(v) <= options.singular_tol * scale) {
          throw Error(ErrorCode::kSingularSpectrum, "inverse of an element with spectrum near 0");
        }
        out(i) = 1.0 / v;
        break;
    }
  }
  return rebuild(a, spec, out);
}

AlgebraElement abs_value(const AlgebraElement& g) {
  return fun_calc(g.adjoint() * g, SpectralFunction::kSqrt);
}

AlgebraElement inverse(const AlgebraElement& a) {
  const double smax = op_norm(a);
  if (min_singular_value(a) <= 1e-13 * std::max(1.0, smax)) {
    throw Error(ErrorCode::kSingularSpectrum, "element is not invertible");
  }
  if (a.algebra().is_commutative()) {
    return {a.algebra(), Matrix(a.data().diagonal().cwiseInverse().asDiagonal())};
  }
  return {a.algebra(), a.data().partialPivLu().inverse()};
}

bool is_positive(const AlgebraElement& a, double tol) {
  const double scale = std::max(1.0, op_norm(a));
  const double skew = (a.data() - a.data().adjoint()).cwiseAbs().maxCoeff();
  if (skew > tol * scale) return false;
  const Matrix sym = 0.5 * (a.data() + a.data().adjoint());
  double lowest = 0.0;
  if (a.algebra().is_commutative()) {
    lowest = sym.diagonal().real().minCoeff();
  } else {
    lowest = Eigen::SelfAdjointEigenSolver<Matrix>(sym, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  }
  return lowest >= -tol * scale;
}

// ---------------------------------------------------------------------------
// Valuations

Valuation Valuation::canonical(const Algebra& source) {
  if (source.kind() == Algebra::Kind::kMatrix) {
    return Valuation(source, Algebra::scalar(), Rule::kNormalizedTrace);
  }
  return Valuation(source, source, Rule::kIdentity);
}

AlgebraElement valuate(const Valuation& nu, const AlgebraElement& a) {
  require_same_algebra(nu.source(), a.algebra(), "valuate");
  if (nu.rule() == Valuation::Rule::kIdentity) return a;
  const Complex tr = a.data().trace() / static_cast<double>(a.algebra().dim());
  return AlgebraElement::constant(nu.target(), tr);
}

// ---------------------------------------------------------------------------
// Sampling

AlgebraElement sample(const Algebra& algebra, std::uint64_t seed, SampleSpec spec) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = algebra.dim();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  Matrix m = Matrix::Zero(n, n);
  if (algebra.is_commutative()) {
    for (int i = 0; i < n; ++i) m(i, i) = Complex{normal(rng), normal(rng)};
  } else {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) m(i, j) = Complex{normal(rng), normal(rng)} * scale;
  }

  switch (spec.style) {
    case SampleStyle::kGeneral:
      return {algebra, std::move(m)};
    case SampleStyle::kHermitian: {
      Matrix h = 0.5 * (m + m.adjoint());
      return {algebra, std::move(h)};
    }
    case SampleStyle::kAntiHermitian: {
      Matrix k = 0.5 * (m - m.adjoint());
      return {algebra, std::move(k)};
    }
    case SampleStyle::kContraction: {
      if (!(spec.radius > 0.0 && spec.radius < 1.0)) {
        throw Error(ErrorCode::kConfigError, "contraction radius must lie in (0, 1)");
      }
      AlgebraElement a(algebra, std::move(m));
      const double norm = op_norm(a);
      return a * Complex{spec.radius / norm, 0.0};
    }
    case SampleStyle::kUnitary: {
      if (algebra.is_commutative()) {
        for (int i = 0; i < n; ++i) m(i, i) = std::polar(1.0, std::arg(m(i, i)));
        return {algebra, std::move(m)};
      }
      Eigen::HouseholderQR<Matrix> qr(m);
      Matrix q = qr.householderQ();
      // Fix column phases so the result does not depend on the QR sign convention.
      Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
      for (int i = 0; i < n; ++i) {
        const Complex d = r(i, i);
        if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
      }
      return {algebra, std::move(q)};
    }
  }
  return {algebra, std::move(m)};
}

}  // namespace opdisk
