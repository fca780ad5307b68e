#pragma once
// Reference computations used only by the tests. They avoid the library's own
// numerical paths: exponentials by Taylor series, square roots by the
// Denman-Beavers iteration, derivatives by plain central differences.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <type_traits>

#include <Eigen/Dense>

#include "opdisk/algebra.hpp"
#include "opdisk/doubled.hpp"

namespace oracle {

using opdisk::Complex;
using opdisk::Matrix;

inline double norm2(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

/// exp(a) by scaling, a 40-term Taylor series and repeated squaring.
inline Matrix taylor_exp(const Matrix& a) {
  int squarings = 0;
  double size = a.cwiseAbs().rowwise().sum().maxCoeff();
  while (size > 0.25) {
    size *= 0.5;
    ++squarings;
  }
  const Matrix scaled = a / std::pow(2.0, squarings);
  Matrix term = Matrix::Identity(a.rows(), a.cols());
  Matrix sum = term;
  for (int k = 1; k <= 40; ++k) {
    term = term * scaled / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

/// Principal square root of a positive matrix (Denman-Beavers).
inline Matrix db_sqrt(const Matrix& a) {
  Matrix y = a;
  Matrix z = Matrix::Identity(a.rows(), a.cols());
  for (int k = 0; k < 60; ++k) {
    const Matrix y_next = 0.5 * (y + z.inverse());
    const Matrix z_next = 0.5 * (z + y.inverse());
    y = y_next;
    z = z_next;
  }
  return y;
}

template <class F>
auto central(F&& f, double t0, double h) {
  using R = std::decay_t<decltype(f(t0))>;
  return R((f(t0 + h) - f(t0 - h)) * (1.0 / (2.0 * h)));
}

inline Matrix gaussian(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = Complex{g(rng), g(rng)};
  return m;
}

inline Matrix rho(int n) {
  Matrix r = Matrix::Identity(2 * n, 2 * n);
  r.bottomRightCorner(n, n) *= -1.0;
  return r;
}

inline Matrix block2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
  const auto n = a.rows();
  Matrix m(2 * n, 2 * n);
  m << a, b, c, d;
  return m;
}

inline opdisk::AlgebraElement scalar(Complex c) {
  return opdisk::AlgebraElement::constant(opdisk::Algebra::scalar(), c);
}

}  // namespace oracle
