#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "entorder/spectrum.hpp"

namespace entorder {

struct PValues {
  double p;
  double dp;   ///< p'(x)
  double d2p;  ///< p''(x)
};

/// p_r(x) = (ln x)^r (sin ln x + 1) + 1 / ln x and its first two derivatives.
/// Errors: DomainError for x <= 1, InvalidArgument for r <= 0.
PValues eval_p(double r, double x);

/// Continuous tail-function surrogate d(x) = e^{-x} p_r(x + a)^k (unnormalized).
class VidalCurve {
 public:
  VidalCurve(unsigned k, double r, double offset);

  unsigned k() const noexcept { return k_; }
  double r() const noexcept { return r_; }
  double offset() const noexcept { return offset_; }

  /// ln d(x) = -x + k ln p_r(x + a). For k = 0 this is -x on any x.
  double log_d(double x) const;
  /// p, p', p'' evaluated at x + a.
  PValues p_at(double x) const { return eval_p(r_, x + offset_); }

 private:
  unsigned k_;
  double r_;
  double offset_;
};

struct CurveConditions {
  double monotonicity;  ///< M = -d'/d; d strictly decreasing iff M > 0
  double convexity;     ///< C = d''/d; d convex iff C >= 0
};

/// Errors: NonPositiveP when p(x + a) <= 0, DomainError when x + a <= 1.
CurveConditions curve_conditions(const VidalCurve& curve, double x);

struct OffsetSearch {
  double grid_step = 0.01;
  double horizon = 0.0;          ///< H; conditions are checked for x in [0, H]
  double margin = 0.0;           ///< required M > margin
  std::optional<double> a_max;   ///< default 1e6 * grid_step
};

/// Smallest grid offset a with M > margin and C >= 0 on a dense grid over
/// x in [0, H] (and x + a > 1 for k > 0). Validity beyond H is not checked.
/// Errors: NotFound, InvalidArgument.
double find_offset(unsigned k, double r, const OffsetSearch& search);

/// As find_offset, with one offset shared by every r in `rs`.
double find_common_offset(unsigned k, std::span<const double> rs, const OffsetSearch& search);

enum class DeltaConvention {
  Schmidt,    ///< Delta = -2 ln q; psi(k = 0) has the weights of tmss(q)
  Amplitude,  ///< Delta = -ln q
};

double delta_from_q(double q, DeltaConvention convention);
std::optional<DeltaConvention> parse_delta_convention(std::string_view text);

/// Two-mode squeezed state, lambda_n = (1 - q^2) q^{2n} for n < N with the
/// exact geometric tail q^{2N}. q = 0 gives the product state. Errors: QOutOfRange.
SchmidtSpectrum tmss(double q, std::size_t n);

/// g(n) = d(Delta n) / d(0), lambda_n = g(n) - g(n+1), tail = g(N).
/// Errors: ConditionViolated when the curve is not a valid tail function on
/// [0, Delta N].
SchmidtSpectrum discretize(const VidalCurve& curve, double delta, std::size_t n,
                           Metadata extra = {});

enum class Family { Tmss, Xi, Psi };

std::string_view to_string(Family family) noexcept;
std::optional<Family> parse_family(std::string_view text);

struct FamilyParams {
  Family family = Family::Tmss;
  std::optional<double> q;
  std::optional<double> delta;
  DeltaConvention convention = DeltaConvention::Schmidt;
  double r = 1.0;
  unsigned k = 0;
  std::size_t n = 1000;
  std::optional<double> offset;  ///< searched when empty
  double grid_step = 0.01;
  double margin = 0.0;
};

/// Delta from an explicit value or from q under the chosen convention.
double resolved_delta(const FamilyParams& params);

SchmidtSpectrum generate(const FamilyParams& params);

/// The xi_r family (k = 1, p_r) on a common Delta, horizon and offset.
class XiFamily {
 public:
  /// Searches one offset valid for every r in `rs` over [0, Delta N].
  XiFamily(double delta, std::size_t n, std::span<const double> rs, double grid_step = 0.01,
           double margin = 0.0);

  double delta() const noexcept { return delta_; }
  std::size_t horizon() const noexcept { return n_; }
  double offset() const noexcept { return offset_; }

  SchmidtSpectrum operator()(double r) const;

 private:
  double delta_;
  std::size_t n_;
  double offset_;
  double grid_step_;
  std::vector<double> rs_;  ///< values the offset was verified for
};

/// Natural log of a certified upper bound on sum_{n >= N} n lambda_n, the
/// part of the mean excitation beyond the stored horizon. -inf for exact
/// spectra; +inf when the spectrum's family metadata cannot support a bound.
double log_excitation_remainder_bound(const SchmidtSpectrum& s);

}  // namespace entorder
