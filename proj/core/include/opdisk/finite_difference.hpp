#pragma once

// Central differences with one Richardson refinement. Works for any value type
// that supports a - b and multiplication by a double.

#include <utility>

namespace opdisk::fd {

inline constexpr double kDefaultStep = 1e-4;

/// (f(h) - f(-h)) / 2h refined with the step h/2: error O(h^4).
template <class F>
auto derivative(F&& f, double t0, double h = kDefaultStep) {
  auto central = [&](double step) { return (f(t0 + step) - f(t0 - step)) * (1.0 / (2.0 * step)); };
  auto coarse = central(h);
  auto fine = central(0.5 * h);
  return (fine * 4.0 - coarse) * (1.0 / 3.0);
}

/// Mixed partial d^2 f / dt ds at (t0, s0) from nested refined central
/// differences.
template <class F>
auto mixed_partial(F&& f, double t0, double s0, double h = kDefaultStep) {
  auto inner = [&](double t) { return derivative([&](double s) { return f(t, s); }, s0, h); };
  return derivative(inner, t0, h);
}

}  // namespace opdisk::fd
