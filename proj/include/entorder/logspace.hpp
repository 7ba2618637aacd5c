#pragma once

// Natural-log-domain arithmetic helpers. Every quantity here is ln(x) for some
// nonnegative x; -inf encodes x = 0.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace entorder::logspace {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// ln(e^a + e^b)
inline double add(double a, double b) noexcept {
  if (a < b) std::swap(a, b);
  if (b == kNegInf) return a;
  return a + std::log1p(std::exp(b - a));
}

/// ln(1 - e^x) for x <= 0. Uses the log1p/expm1 split at -ln 2.
inline double log1m_exp(double x) noexcept {
  if (x == kNegInf) return 0.0;
  if (x > -0.6931471805599453) return std::log(-std::expm1(x));
  return std::log1p(-std::exp(x));
}

/// ln(e^a - e^b) for b <= a.
inline double sub(double a, double b) noexcept {
  if (b == kNegInf) return a;
  return a + log1m_exp(b - a);
}

/// ln(sum_i e^{v_i}), accumulated in index order so the result is
/// reproducible for a given input.
inline double sum(std::span<const double> values) noexcept {
  if (values.empty()) return kNegInf;
  const double top = *std::max_element(values.begin(), values.end());
  if (top == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double v : values) acc += std::exp(v - top);
  return top + std::log(acc);
}

}  // namespace entorder::logspace
