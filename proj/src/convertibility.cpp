#include "entorder/convertibility.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <string>

#include "entorder/error.hpp"

namespace entorder {

std::string_view to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::TwoWay: return "TwoWay";
    case Verdict::OneWayAtoB: return "OneWayAtoB";
    case Verdict::OneWayBtoA: return "OneWayBtoA";
    case Verdict::Incomparable: return "Incomparable";
    case Verdict::Undecided: return "Undecided";
  }
  return "?";
}

Verdict mirror(Verdict verdict) noexcept {
  if (verdict == Verdict::OneWayAtoB) return Verdict::OneWayBtoA;
  if (verdict == Verdict::OneWayBtoA) return Verdict::OneWayAtoB;
  return verdict;
}

std::string_view to_string(Direction direction) noexcept {
  switch (direction) {
    case Direction::Convertible: return "Convertible";
    case Direction::NotConvertible: return "NotConvertible";
    case Direction::Undecided: return "Undecided";
  }
  return "?";
}

std::string_view to_string(Evidence evidence) noexcept {
  switch (evidence) {
    case Evidence::Yes: return "yes";
    case Evidence::No: return "no";
    case Evidence::Unknown: return "unknown";
  }
  return "?";
}

namespace {

constexpr double kNegInf = logspace::kNegInf;

// ln g(n) enclosed in [lo, hi]: lo drops the tail bound, hi includes it.
class TailBounds {
 public:
  explicit TailBounds(const SchmidtSpectrum& s)
      : exact_(s.is_exact()), log_tail_(s.log_tail_bound()), hi_(tail_function(s).log_g) {
    const auto lw = s.log_weights();
    lo_.resize(lw.size() + 1);
    lo_[lw.size()] = kNegInf;
    for (std::size_t n = lw.size(); n-- > 0;) lo_[n] = logspace::add(lo_[n + 1], lw[n]);
  }

  std::size_t size() const noexcept { return lo_.size() - 1; }
  double lo(std::size_t n) const noexcept { return n < size() ? lo_[n] : kNegInf; }
  double hi(std::size_t n) const noexcept {
    if (n <= size()) return hi_[n];
    return exact_ ? kNegInf : log_tail_;
  }

 private:
  bool exact_;
  double log_tail_;
  std::vector<double> hi_;
  std::vector<double> lo_;
};

// Indices 1 <= n < end are compared. A truncated spectrum only takes part up
// to its safe horizon, where the unknown tail moves g by at most
// kTruncationLogTolerance; beyond it nothing is claimed.
std::size_t comparison_end(const SchmidtSpectrum& a, const SchmidtSpectrum& b) {
  if (a.is_exact() && b.is_exact()) return std::max(a.size(), b.size()) + 1;
  std::size_t end = std::numeric_limits<std::size_t>::max();
  for (const auto* s : {&a, &b}) {
    if (!s->is_exact()) end = std::min(end, safe_horizon(*s, kTruncationLogTolerance));
  }
  if (end <= 1) throw Error(Errc::TruncationUnsafe, "tail bounds leave no index n >= 1 to compare");
  return end;
}

}  // namespace

bool locc_convertible(const SchmidtSpectrum& a, const SchmidtSpectrum& b) {
  const TailBounds ga(a), gb(b);
  const std::size_t end = comparison_end(a, b);
  bool ambiguous = false;
  for (std::size_t n = 1; n < end; ++n) {
    if (ga.lo(n) >= gb.hi(n)) continue;
    if (ga.hi(n) < gb.lo(n)) return false;
    // Identical stored data: equal as far as anything is known.
    if (ga.lo(n) == gb.lo(n) && ga.hi(n) == gb.hi(n)) continue;
    ambiguous = true;
  }
  if (ambiguous) throw Error(Errc::TruncationUnsafe, "tail bounds could flip a partial-sum comparison");
  return true;
}

double max_probability(const SchmidtSpectrum& a, const SchmidtSpectrum& b) {
  const TailBounds ga(a), gb(b);
  const std::size_t end = comparison_end(a, b);
  double best = 0.0;         // ln ratio at n = 0 is 0 by normalization
  double best_lower = 0.0;   // smallest ratio allowed by the tail bounds
  for (std::size_t n = 1; n < end; ++n) {
    if (gb.hi(n) == kNegInf) continue;  // g_b(n) = 0: no constraint
    best = std::min(best, ga.hi(n) - gb.hi(n));
    best_lower = std::min(best_lower, ga.lo(n) - gb.hi(n));
  }
  // Inside the safe horizon the spread is at most the tolerance; the factor
  // of 2 only absorbs rounding between the two log-sum orders.
  if (best - best_lower > 2.0 * kTruncationLogTolerance)
    throw Error(Errc::TruncationUnsafe, "tail bounds leave the optimal probability undetermined");
  if (best >= 0.0) return 1.0;
  const double p = std::exp(best);
  return p < 1.0 ? p : std::nextafter(1.0, 0.0);
}

ComparisonReport locc_compare(const SchmidtSpectrum& a, const SchmidtSpectrum& b) {
  ComparisonReport report;
  report.mode = "locc";
  const bool ab = locc_convertible(a, b);
  const bool ba = locc_convertible(b, a);
  report.verdict = ab ? (ba ? Verdict::TwoWay : Verdict::OneWayAtoB)
                      : (ba ? Verdict::OneWayBtoA : Verdict::Incomparable);
  return report;
}

ComparisonReport probability_compare(const SchmidtSpectrum& a, const SchmidtSpectrum& b) {
  ComparisonReport report;
  report.mode = "prob";
  report.probability_ab = max_probability(a, b);
  report.probability_ba = max_probability(b, a);
  // Finite-dimensional SLOCC: positive probability in each direction.
  const bool ab = *report.probability_ab > 0.0;
  const bool ba = *report.probability_ba > 0.0;
  report.verdict = ab ? (ba ? Verdict::TwoWay : Verdict::OneWayAtoB)
                      : (ba ? Verdict::OneWayBtoA : Verdict::Incomparable);
  return report;
}

Direction slocc_direction(const TrendStats& stats, bool targets_fall, bool stability_resolved) noexcept {
  if (stats.trend == Trend::DivergesDown || stats.trend == Trend::Oscillating || targets_fall)
    return Direction::NotConvertible;
  if (stability_resolved && stats.min_stable() && (stats.trend == Trend::BoundedBelow || stats.trend == Trend::DivergesUp))
    return Direction::Convertible;
  return Direction::Undecided;
}

ComparisonReport slocc_decide(const SchmidtSpectrum& a, const SchmidtSpectrum& b, Window window,
                              const TrendThresholds& thresholds) {
  thresholds.validate();
  if (window.n_max < window.n_min || window.size() < thresholds.min_points)
    throw Error(Errc::WindowTooSmall, "window needs at least " + std::to_string(thresholds.min_points) +
                                          " points");
  const auto seq = log_ratio_sequence(a, b, window);
  std::vector<double> negated(seq.values.size());
  std::transform(seq.values.begin(), seq.values.end(), negated.begin(), [](double v) { return -v; });

  ComparisonReport report;
  report.mode = "slocc";
  report.window = window;
  report.forward = analyze_trend(seq.values, thresholds);
  report.backward = analyze_trend(negated, thresholds);
  report.log_epsilon_ab = *std::min_element(seq.values.begin(), seq.values.end());
  report.log_epsilon_ba = *std::min_element(negated.begin(), negated.end());

  report.targets = target_evidence(a, b, seq, thresholds);
  const bool resolved = report.targets->stability_resolved();
  const Direction ab = slocc_direction(*report.forward, report.targets->min_extended, resolved);
  const Direction ba = slocc_direction(*report.backward, report.targets->max_extended, resolved);
  if (ab == Direction::Convertible && ba == Direction::Convertible) {
    report.verdict = Verdict::TwoWay;
  } else if (ab == Direction::Convertible && ba == Direction::NotConvertible) {
    report.verdict = Verdict::OneWayAtoB;
  } else if (ab == Direction::NotConvertible && ba == Direction::Convertible) {
    report.verdict = Verdict::OneWayBtoA;
  } else if (ab == Direction::NotConvertible && ba == Direction::NotConvertible) {
    report.verdict = Verdict::Incomparable;
  } else {
    report.verdict = Verdict::Undecided;
  }

  report.witnesses = incomparability_certificate(a, b, window, thresholds);
  if (report.witnesses && report.verdict == Verdict::Undecided) report.verdict = Verdict::Incomparable;
  return report;
}

ComparisonReport slocc_decide(const SchmidtSpectrum& a, const SchmidtSpectrum& b,
                              const TrendThresholds& thresholds) {
  return slocc_decide(a, b, default_window(a, b), thresholds);
}

std::vector<double> sample_grid(double r_min, double r_max, std::size_t steps) {
  if (steps == 0 || !(r_min <= r_max) || !std::isfinite(r_min) || !std::isfinite(r_max))
    throw Error(Errc::InvalidArgument, "sample grid needs steps >= 1 and r_min <= r_max");
  std::vector<double> grid(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    grid[i] = (steps == 1) ? r_min
                           : r_min + (r_max - r_min) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  grid.back() = (steps == 1) ? r_min : r_max;
  return grid;
}

MonotoneEstimate estimate_r_bounds(const SchmidtSpectrum& psi, const FamilyGenerator& family,
                                   double r_min, double r_max, std::size_t steps,
                                   std::optional<Window> window, const TrendThresholds& thresholds) {
  thresholds.validate();
  const auto rs = sample_grid(r_min, r_max, steps);

  // Members are generated concurrently; slot i only ever holds r_i's result.
  std::vector<std::optional<SchmidtSpectrum>> members(rs.size());
  std::vector<std::exception_ptr> failures(rs.size());
  const auto count = static_cast<std::int64_t>(rs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      auto member = family(rs[i]);
      if (!vidal_conditions(member).all_pass())
        throw Error(Errc::InvalidFamily, "family member r = " + std::to_string(rs[i]) +
                                             " fails a Vidal condition");
      members[i] = std::move(member);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  }
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (!failures[i]) continue;
    try {
      std::rethrow_exception(failures[i]);
    } catch (const Error& e) {
      if (e.code() == Errc::InvalidFamily) throw;
      throw Error(Errc::InvalidFamily, "family member r = " + std::to_string(rs[i]) + ": " + e.what());
    }
  }

  MonotoneEstimate estimate;
  estimate.r_min = r_min;
  estimate.r_max = r_max;
  if (!window) {
    std::size_t safe = safe_horizon(psi, kTruncationLogTolerance);
    for (const auto& m : members) safe = std::min(safe, safe_horizon(*m, kTruncationLogTolerance));
    if (safe > 0) window = Window{0, safe - 1};
  }
  estimate.window = window;
  const bool usable = window && window->n_max >= window->n_min && window->size() >= thresholds.min_points;

  estimate.per_r.resize(rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    RSample& sample = estimate.per_r[i];
    sample.r = rs[i];
    if (!usable) continue;
    const auto seq = log_ratio_sequence(psi, *members[i], *window);
    sample.stats = analyze_trend(seq.values, thresholds);
    sample.targets = target_evidence(psi, *members[i], seq, thresholds);
    const Trend t = sample.stats->trend;
    if (t == Trend::DivergesDown || t == Trend::Oscillating || sample.targets->min_extended)
      sample.liminf_zero = Evidence::Yes;
    else if (sample.stats->min_stable() && sample.targets->stability_resolved())
      sample.liminf_zero = Evidence::No;
    if (t == Trend::DivergesUp || t == Trend::Oscillating || sample.targets->max_extended)
      sample.limsup_finite = Evidence::No;
    else if (sample.stats->max_stable() && sample.targets->stability_resolved())
      sample.limsup_finite = Evidence::Yes;

    const bool down = sample.liminf_zero == Evidence::Yes;
    const bool up = sample.limsup_finite == Evidence::No;
    if (down && up) sample.trend = Trend::Oscillating;
    else if (down) sample.trend = Trend::DivergesDown;
    else if (up) sample.trend = Trend::DivergesUp;
    else if (sample.liminf_zero == Evidence::No && sample.limsup_finite == Evidence::Yes)
      sample.trend = Trend::BoundedBelow;
  }

  std::optional<std::size_t> minus_index;
  std::optional<std::size_t> plus_index;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const auto& s = estimate.per_r[i];
    if (s.liminf_zero == Evidence::Unknown || s.limsup_finite == Evidence::Unknown)
      estimate.undecided_band.push_back(s.r);
    if (!minus_index && s.liminf_zero != Evidence::No) minus_index = i;
    if (!plus_index && s.limsup_finite == Evidence::Yes) plus_index = i;
  }
  estimate.r_minus = !minus_index ? r_max : rs[*minus_index == 0 ? 0 : *minus_index - 1];
  estimate.r_plus = !plus_index ? r_max : rs[*plus_index];
  estimate.r_minus = std::min(estimate.r_minus, estimate.r_plus);

  for (std::size_t i = 0; i + 1 < rs.size(); ++i) {
    FamilyOrderCheck check{rs[i], rs[i + 1], Verdict::Undecided};
    if (usable) check.verdict = slocc_decide(*members[i], *members[i + 1], *window, thresholds).verdict;
    estimate.family_order.push_back(check);
  }
  return estimate;
}

}  // namespace entorder
