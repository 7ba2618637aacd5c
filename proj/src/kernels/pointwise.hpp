#pragma once

// Per-index bodies shared by the serial and OpenMP kernels so both paths
// evaluate exactly the same expressions.

#include <cmath>
#include <cstddef>
#include <span>

#include "entorder/detail/p_function.hpp"
#include "entorder/kernels.hpp"
#include "entorder/logspace.hpp"

namespace entorder::kernels::detail {

inline bool point_fails(std::span<const CurveShape> shapes, double y, double margin) noexcept {
  for (const auto& shape : shapes) {
    if (shape.k == 0) {
      // d = e^{-y}: M = C = 1.
      if (!(1.0 > margin)) return true;
      continue;
    }
    if (!(y > 1.0)) return true;
    const auto v = entorder::detail::p_triple(shape.r, y);
    if (!(v.p > 0.0)) return true;
    const auto f = entorder::detail::curve_functionals(shape.k, v);
    if (!(f.monotonicity > margin) || !(f.convexity >= 0.0)) return true;
  }
  return false;
}

inline double log_curve_at(CurveShape shape, double offset, double delta, std::size_t n) noexcept {
  const double x = delta * static_cast<double>(n);
  if (shape.k == 0) return -x;
  const double p = entorder::detail::p_triple(shape.r, x + offset).p;
  return -x + static_cast<double>(shape.k) * std::log(p);
}

inline double log_weight_at(std::span<const double> log_g, std::size_t n) noexcept {
  return log_g[n] + logspace::log1m_exp(log_g[n + 1] - log_g[n]);
}

}  // namespace entorder::kernels::detail
