#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entorder/oscillation.hpp"
#include "entorder/spectrum.hpp"

namespace entorder {

enum class Verdict { TwoWay, OneWayAtoB, OneWayBtoA, Incomparable, Undecided };

std::string_view to_string(Verdict verdict) noexcept;
/// The verdict of the swapped comparison.
Verdict mirror(Verdict verdict) noexcept;

/// Deterministic single-copy conversion a -> b: g_a(n) >= g_b(n) for every n.
/// Compared over all n while both tails are known (see TruncationUnsafe).
bool locc_convertible(const SchmidtSpectrum& a, const SchmidtSpectrum& b);

/// Optimal single-copy success probability min_n g_a(n) / g_b(n), in [0, 1];
/// exactly 1 iff locc_convertible(a, b).
double max_probability(const SchmidtSpectrum& a, const SchmidtSpectrum& b);

enum class Direction { Convertible, NotConvertible, Undecided };

std::string_view to_string(Direction direction) noexcept;

struct ComparisonReport {
  std::string mode;  ///< "locc", "prob" or "slocc"
  Verdict verdict = Verdict::Undecided;

  // slocc
  std::optional<Window> window;
  std::optional<double> log_epsilon_ab;  ///< ln min_n g_a(n)/g_b(n) over the window
  std::optional<double> log_epsilon_ba;
  std::optional<TrendStats> forward;     ///< trend of l = ln g_a - ln g_b
  std::optional<TrendStats> backward;    ///< trend of -l
  std::optional<TargetEvidence> targets; ///< subsequence evidence on l
  std::optional<OscillationCertificate> witnesses;

  // locc / prob
  std::optional<double> probability_ab;
  std::optional<double> probability_ba;
};

/// Whether l evidences liminf g_a/g_b > 0 (a -> b), its failure, or neither.
/// A targeted subsequence that keeps setting new minima rules out a -> b;
/// without `stability_resolved` a stable minimum is not taken as evidence.
Direction slocc_direction(const TrendStats& stats, bool targets_fall = false,
                          bool stability_resolved = true) noexcept;

ComparisonReport locc_compare(const SchmidtSpectrum& a, const SchmidtSpectrum& b);
ComparisonReport probability_compare(const SchmidtSpectrum& a, const SchmidtSpectrum& b);

/// Evidence-based SLOCC decision on a finite window. Never reports a
/// direction as convertible without a stabilized running minimum.
/// Errors: WindowTooSmall, TruncationUnsafe.
ComparisonReport slocc_decide(const SchmidtSpectrum& a, const SchmidtSpectrum& b, Window window,
                              const TrendThresholds& thresholds = {});
/// Uses default_window(a, b).
ComparisonReport slocc_decide(const SchmidtSpectrum& a, const SchmidtSpectrum& b,
                              const TrendThresholds& thresholds = {});

enum class Evidence { Yes, No, Unknown };

std::string_view to_string(Evidence evidence) noexcept;

struct RSample {
  double r = 0.0;
  std::optional<TrendStats> stats;  ///< empty when the window was too small
  std::optional<TargetEvidence> targets;
  /// Combined label: Oscillating when both liminf = 0 and limsup = inf are
  /// evidenced, DivergesDown / DivergesUp for one of them, BoundedBelow when
  /// the ratio is evidenced bounded away from 0 and inf.
  Trend trend = Trend::Undecided;
  Evidence liminf_zero = Evidence::Unknown;    ///< liminf g_psi / g_xi_r = 0
  Evidence limsup_finite = Evidence::Unknown;  ///< limsup g_psi / g_xi_r < inf
};

struct FamilyOrderCheck {
  double r_low = 0.0;
  double r_high = 0.0;
  Verdict verdict = Verdict::Undecided;  ///< slocc_decide(xi_{r_low}, xi_{r_high})
};

struct MonotoneEstimate {
  double r_min = 0.0;
  double r_max = 0.0;
  double r_minus = 0.0;
  double r_plus = 0.0;
  std::optional<Window> window;
  std::vector<RSample> per_r;
  std::vector<double> undecided_band;
  std::vector<FamilyOrderCheck> family_order;
};

using FamilyGenerator = std::function<SchmidtSpectrum(double)>;

/// `steps` evenly spaced values from r_min to r_max inclusive.
std::vector<double> sample_grid(double r_min, double r_max, std::size_t steps);

/// Locates psi against a totally ordered family:
///   R- = inf{ r : liminf g_psi/g_r = 0 },  R+ = inf{ r : limsup g_psi/g_r < inf },
/// with an empty set mapping to r_max. r_minus is reported as the lower end
/// of its grid bracket and r_plus as the upper end of its bracket, so the
/// pair encloses the true values whenever the per-r evidence is right.
/// Errors: InvalidFamily when a sampled member fails a Vidal condition.
MonotoneEstimate estimate_r_bounds(const SchmidtSpectrum& psi, const FamilyGenerator& family,
                                   double r_min, double r_max, std::size_t steps,
                                   std::optional<Window> window = std::nullopt,
                                   const TrendThresholds& thresholds = {});

}  // namespace entorder
