#pragma once

#include <cmath>

namespace entorder::detail {

struct PTriple {
  double p;
  double dp;
  double d2p;
};

// p_r(x) = L^r (sin L + 1) + 1/L with L = ln x, and its first two
// x-derivatives through the chain rule on L. Caller guarantees x > 1.
inline PTriple p_triple(double r, double x) noexcept {
  const double L = std::log(x);
  const double s = std::sin(L);
  const double c = std::cos(L);
  const double Lr = (r == 1.0) ? L : std::pow(L, r);
  const double Lr1 = (r == 1.0) ? 1.0 : Lr / L;   // L^{r-1}
  const double Lr2 = Lr1 / L;                      // L^{r-2}
  const double invL = 1.0 / L;

  const double p = Lr * (s + 1.0) + invL;
  const double q = r * Lr1 * (s + 1.0) + Lr * c - invL * invL;
  const double dq = r * (r - 1.0) * Lr2 * (s + 1.0) + 2.0 * r * Lr1 * c - Lr * s
                    + 2.0 * invL * invL * invL;
  return {p, q / x, (dq - q) / (x * x)};
}

// Monotonicity and convexity functionals of d(y) = e^{-y} p(y)^k:
//   M = -d'/d = 1 - k u,   C = d''/d = (1 - k u)^2 + k (p''/p - u^2),   u = p'/p.
struct CurveFunctionals {
  double monotonicity;
  double convexity;
};

inline CurveFunctionals curve_functionals(unsigned k, const PTriple& v) noexcept {
  const double kk = static_cast<double>(k);
  const double u = v.dp / v.p;
  const double m = 1.0 - kk * u;
  return {m, m * m + kk * (v.d2p / v.p - u * u)};
}

}  // namespace entorder::detail
