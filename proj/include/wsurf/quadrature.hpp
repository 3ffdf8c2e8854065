#pragma once

// Adaptive Gauss-Legendre quadrature along straight segments in the complex
// plane, for vector-valued integrands.

#include <algorithm>
#include <array>
#include <complex>
#include <type_traits>

#include "wsurf/errors.hpp"

namespace wsurf {

using cd = std::complex<double>;

inline constexpr int kGaussOrder = 16;
inline constexpr int kMaxBisection = 20;

struct GaussRule {
  std::array<double, kGaussOrder> nodes;    // on [-1, 1]
  std::array<double, kGaussOrder> weights;
};

/// 16-point Gauss-Legendre rule, computed once by Newton iteration on P_16.
const GaussRule& gauss_legendre16();

/// Fixed-rule estimate of the integral of f over the segment [a, b].
template <typename F>
std::decay_t<std::invoke_result_t<F, cd>> gauss_segment(const F& f, cd a, cd b) {
  using V = std::decay_t<std::invoke_result_t<F, cd>>;
  const GaussRule& rule = gauss_legendre16();
  const cd half = 0.5 * (b - a);
  const cd mid = 0.5 * (a + b);
  V acc = (rule.weights[0] * half) * f(mid + rule.nodes[0] * half);
  for (int k = 1; k < kGaussOrder; ++k) acc += (rule.weights[k] * half) * f(mid + rule.nodes[k] * half);
  return acc;
}

namespace detail {

template <typename F, typename V>
V adaptive(const F& f, cd a, cd b, const V& whole, double tol, int depth) {
  const cd m = 0.5 * (a + b);
  V left = gauss_segment(f, a, m);
  V right = gauss_segment(f, m, b);
  V both = left + right;
  const double scale = std::max(1.0, static_cast<double>(both.cwiseAbs().maxCoeff()));
  if (static_cast<double>((both - whole).cwiseAbs().maxCoeff()) <= tol * scale) return both;
  if (depth >= kMaxBisection) throw QuadratureFailure("segment quadrature did not reach tolerance");
  return adaptive(f, a, m, left, tol, depth + 1) + adaptive(f, m, b, right, tol, depth + 1);
}

}  // namespace detail

/// Integral of an Eigen-vector valued holomorphic f along [a, b]; bisects
/// until two consecutive estimates agree to tol (relative above magnitude 1).
/// Throws QuadratureFailure after kMaxBisection levels.
template <typename F>
auto integrate_segment(const F& f, cd a, cd b, double tol = 1e-10) {
  using V = std::decay_t<std::invoke_result_t<F, cd>>;
  if (a == b) {
    V zero = f(a);
    zero.setZero();
    return zero;
  }
  const V whole = gauss_segment(f, a, b);
  return V(detail::adaptive(f, a, b, whole, tol, 0));
}

}  // namespace wsurf
