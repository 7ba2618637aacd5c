#include "entorder/oscillation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "entorder/error.hpp"
#include "entorder/kernels.hpp"

namespace entorder {

void TrendThresholds::validate() const {
  if (!(drift_nats > 0.0) || min_windows == 0 || min_points == 0 || !(target_step_nats > 0.0))
    throw Error(Errc::InvalidArgument, "trend thresholds must be positive");
}

std::string_view to_string(Trend trend) noexcept {
  switch (trend) {
    case Trend::BoundedBelow: return "BoundedBelow";
    case Trend::DivergesDown: return "DivergesDown";
    case Trend::DivergesUp: return "DivergesUp";
    case Trend::Oscillating: return "Oscillating";
    case Trend::Undecided: return "Undecided";
  }
  return "?";
}

Trend mirror(Trend trend) noexcept {
  if (trend == Trend::DivergesDown) return Trend::DivergesUp;
  if (trend == Trend::DivergesUp) return Trend::DivergesDown;
  return trend;
}

std::size_t dyadic_second_half(std::size_t length) noexcept {
  std::vector<std::size_t> starts{0};
  for (std::size_t s = 1; s < length; s *= 2) starts.push_back(s);
  const std::size_t half = (starts.size() + 1) / 2;
  return half < starts.size() ? starts[half] : length;
}

TrendStats analyze_trend(std::span<const double> values, const TrendThresholds& thresholds) {
  thresholds.validate();
  const std::size_t len = values.size();
  if (len < thresholds.min_points)
    throw Error(Errc::TooShort, "sequence has " + std::to_string(len) + " points, need " +
                                    std::to_string(thresholds.min_points));

  std::vector<std::size_t> starts{0};
  for (std::size_t s = 1; s < len; s *= 2) starts.push_back(s);
  const std::size_t windows = starts.size();
  const std::size_t half = (windows + 1) / 2;

  TrendStats stats;
  stats.drift_nats = thresholds.drift_nats;
  stats.second_half_start = dyadic_second_half(len);

  double run_min = values[0];
  double run_max = values[0];
  for (std::size_t i = 1; i < stats.second_half_start; ++i) {
    run_min = std::min(run_min, values[i]);
    run_max = std::max(run_max, values[i]);
  }
  const double min_before = run_min;
  const double max_before = run_max;
  for (std::size_t j = half; j < windows; ++j) {
    const std::size_t end = (j + 1 < windows) ? starts[j + 1] : len;
    const auto [lo, hi] = std::minmax_element(values.begin() + static_cast<std::ptrdiff_t>(starts[j]),
                                              values.begin() + static_cast<std::ptrdiff_t>(end));
    if (*lo < run_min) {
      ++stats.min_extensions;
      run_min = *lo;
    }
    if (*hi > run_max) {
      ++stats.max_extensions;
      run_max = *hi;
    }
  }
  stats.min_fall = min_before - run_min;
  stats.max_rise = run_max - max_before;

  const bool down = stats.min_fall >= thresholds.drift_nats && stats.min_extensions >= thresholds.min_windows;
  const bool up = stats.max_rise >= thresholds.drift_nats && stats.max_extensions >= thresholds.min_windows;
  if (down && up) {
    stats.trend = Trend::Oscillating;
  } else if (down) {
    stats.trend = Trend::DivergesDown;
  } else if (up) {
    stats.trend = Trend::DivergesUp;
  } else if (stats.min_stable() && stats.max_stable()) {
    stats.trend = Trend::BoundedBelow;
  } else {
    stats.trend = Trend::Undecided;
  }
  return stats;
}

Trend classify_trend(std::span<const double> values, const TrendThresholds& thresholds) {
  return analyze_trend(values, thresholds).trend;
}

Window default_window(const SchmidtSpectrum& a, const SchmidtSpectrum& b) {
  const std::size_t safe = std::min(safe_horizon(a, kTruncationLogTolerance),
                                    safe_horizon(b, kTruncationLogTolerance));
  if (safe == 0) throw Error(Errc::TruncationUnsafe, "tail bounds leave no safe comparison range");
  return {0, safe - 1};
}

LogRatioSequence log_ratio_sequence(const SchmidtSpectrum& a, const SchmidtSpectrum& b,
                                    Window window) {
  if (window.n_max < window.n_min) throw Error(Errc::InvalidArgument, "window is empty");
  const std::size_t safe = std::min(safe_horizon(a, kTruncationLogTolerance),
                                    safe_horizon(b, kTruncationLogTolerance));
  if (window.n_max >= safe)
    throw Error(Errc::TruncationUnsafe, "window reaches n = " + std::to_string(window.n_max) +
                                            " but tail bounds are only safe below n = " +
                                            std::to_string(safe));
  const auto ga = tail_function(a);
  const auto gb = tail_function(b);
  LogRatioSequence seq{window, std::vector<double>(window.size())};
  const auto first = static_cast<std::ptrdiff_t>(window.n_min);
  kernels::parallel::log_ratio(std::span(ga.log_g).subspan(first, window.size()),
                               std::span(gb.log_g).subspan(first, window.size()), seq.values);
  return seq;
}

namespace {

struct TargetGrid {
  double delta;
  double offset;
};

std::optional<TargetGrid> target_grid(const SchmidtSpectrum& s) {
  if (!(s.metadata_number("k").value_or(0.0) > 0.0)) return std::nullopt;
  const auto delta = s.metadata_number("delta");
  if (!delta || !(*delta > 0.0)) return std::nullopt;
  return TargetGrid{*delta, s.metadata_number("offset").value_or(0.0)};
}

// Nearest grid indices to x = e^theta for theta = pi/2 + pi j (sin ln x = +-1).
void append_targets(const TargetGrid& grid, const Window& window, std::vector<std::size_t>& out) {
  const double x_max = grid.delta * static_cast<double>(window.n_max) + grid.offset;
  for (std::size_t j = 0;; ++j) {
    const double theta = std::numbers::pi / 2.0 + std::numbers::pi * static_cast<double>(j);
    const double x = std::exp(theta);
    if (x > x_max + grid.delta) break;
    const double n = std::round((x - grid.offset) / grid.delta);
    if (n < static_cast<double>(window.n_min) || n > static_cast<double>(window.n_max)) continue;
    out.push_back(static_cast<std::size_t>(n));
  }
}

void sort_unique(std::vector<Witness>& list) {
  std::sort(list.begin(), list.end(), [](const Witness& l, const Witness& r) { return l.n < r.n; });
  list.erase(std::unique(list.begin(), list.end(), [](const Witness& l, const Witness& r) { return l.n == r.n; }),
             list.end());
}

// Keeps candidates that beat the running extreme just before them by min_step.
std::vector<Witness> running_extreme_witnesses(const LogRatioSequence& seq,
                                               const std::vector<Witness>& candidates,
                                               double min_step, bool maxima) {
  const auto& v = seq.values;
  std::vector<double> prefix(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i == 0) prefix[i] = v[i];
    else prefix[i] = maxima ? std::max(prefix[i - 1], v[i]) : std::min(prefix[i - 1], v[i]);
  }
  // A witness must be a running extreme and clear the previous witness
  // (l(n_min) for the first) by min_step.
  std::vector<Witness> accepted;
  double last = v.front();
  for (const auto& c : candidates) {
    const std::size_t i = c.n - seq.window.n_min;
    if (i == 0) continue;
    const bool extends = maxima ? c.value >= prefix[i - 1] && c.value >= last + min_step
                                : c.value <= prefix[i - 1] && c.value <= last - min_step;
    if (extends) {
      accepted.push_back(c);
      last = c.value;
    }
  }
  return accepted;
}

}  // namespace

TargetedExtrema targeted_extrema(const SchmidtSpectrum& a, const SchmidtSpectrum& b,
                                 const LogRatioSequence& sequence) {
  const Window& w = sequence.window;
  TargetedExtrema result;
  for (const auto* s : {&a, &b}) {
    const auto grid = target_grid(*s);
    if (!grid) continue;
    std::vector<std::size_t> targets;
    append_targets(*grid, w, targets);
    const auto radius = static_cast<std::size_t>(std::ceil(std::numbers::pi / grid->delta));
    for (std::size_t t : targets) {
      const std::size_t lo = (t > w.n_min + radius) ? t - radius : w.n_min;
      const std::size_t hi = std::min(t + radius, w.n_max);
      Witness best_max{lo, sequence.at(lo)};
      Witness best_min = best_max;
      for (std::size_t n = lo + 1; n <= hi; ++n) {
        const double v = sequence.at(n);
        if (v > best_max.value) best_max = {n, v};
        if (v < best_min.value) best_min = {n, v};
      }
      result.maxima.push_back(best_max);
      result.minima.push_back(best_min);
    }
  }
  sort_unique(result.maxima);
  sort_unique(result.minima);
  return result;
}

TargetEvidence target_evidence(const SchmidtSpectrum& a, const SchmidtSpectrum& b,
                               const LogRatioSequence& sequence, const TrendThresholds& thresholds) {
  const Window& w = sequence.window;
  std::map<std::size_t, TargetRegion> by_target;
  for (const auto* s : {&a, &b}) {
    const auto grid = target_grid(*s);
    if (!grid) continue;
    const auto radius = static_cast<std::size_t>(std::ceil(std::numbers::pi / grid->delta));
    const double x_max = grid->delta * static_cast<double>(w.n_max) + grid->offset;
    for (std::size_t j = 0;; ++j) {
      const double x = std::exp(std::numbers::pi / 2.0 + std::numbers::pi * static_cast<double>(j));
      if (x > x_max + grid->delta) break;
      const double n = std::round((x - grid->offset) / grid->delta);
      if (n < static_cast<double>(w.n_min) || n > static_cast<double>(w.n_max)) continue;
      const auto t = static_cast<std::size_t>(n);
      const std::size_t lo = (t > w.n_min + radius) ? t - radius : w.n_min;
      const std::size_t hi = std::min(t + radius, w.n_max);
      auto [it, fresh] = by_target.try_emplace(j, TargetRegion{j, lo, hi, 0.0, 0.0});
      if (!fresh) {
        it->second.n_lo = std::min(it->second.n_lo, lo);
        it->second.n_hi = std::max(it->second.n_hi, hi);
      }
    }
  }

  TargetEvidence evidence;
  evidence.has_targets = !by_target.empty();
  const std::size_t tail = w.n_min + dyadic_second_half(w.size());
  bool tail_even = false, tail_odd = false;
  double run_min = 0.0;
  double run_max = 0.0;
  for (auto& [j, region] : by_target) {
    if (region.n_lo == w.n_min) continue;
    const auto first = sequence.values.begin() + static_cast<std::ptrdiff_t>(region.n_lo - w.n_min);
    const auto last = sequence.values.begin() + static_cast<std::ptrdiff_t>(region.n_hi - w.n_min + 1);
    const auto [lo, hi] = std::minmax_element(first, last);
    region.min = *lo;
    region.max = *hi;
    if (evidence.regions.empty()) {
      run_min = region.min;
      run_max = region.max;
    } else {
      if (region.min <= run_min - thresholds.target_step_nats) evidence.min_extended = true;
      if (region.max >= run_max + thresholds.target_step_nats) evidence.max_extended = true;
      run_min = std::min(run_min, region.min);
      run_max = std::max(run_max, region.max);
    }
    if (region.n_lo >= tail) (j % 2 == 0 ? tail_even : tail_odd) = true;
    evidence.regions.push_back(region);
  }
  evidence.tail_covers_period = tail_even && tail_odd;
  return evidence;
}

std::optional<OscillationCertificate> incomparability_certificate(
    const SchmidtSpectrum& a, const SchmidtSpectrum& b, Window window,
    const TrendThresholds& thresholds, const CertificateOptions& options) {
  thresholds.validate();
  if (window.n_max < window.n_min || window.size() < thresholds.min_points)
    throw Error(Errc::TooShort, "certificate window needs at least " +
                                    std::to_string(thresholds.min_points) + " points");
  const auto seq = log_ratio_sequence(a, b, window);
  const auto extrema = targeted_extrema(a, b, seq);

  OscillationCertificate cert;
  cert.window = window;
  cert.up = running_extreme_witnesses(seq, extrema.maxima, options.min_step_nats, true);
  cert.down = running_extreme_witnesses(seq, extrema.minima, options.min_step_nats, false);
  if (cert.up.size() < options.min_witnesses || cert.down.size() < options.min_witnesses)
    return std::nullopt;
  return cert;
}

bool verify_certificate(const OscillationCertificate& certificate, const SchmidtSpectrum& a,
                        const SchmidtSpectrum& b, const CertificateOptions& options) {
  if (certificate.up.size() < options.min_witnesses || certificate.down.size() < options.min_witnesses)
    return false;
  const auto seq = log_ratio_sequence(a, b, certificate.window);
  auto check = [&](const std::vector<Witness>& list, bool maxima) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto& w = list[i];
      if (!certificate.window.contains(w.n) || w.n == certificate.window.n_min) return false;
      if (!(std::abs(seq.at(w.n) - w.value) <= 1e-12)) return false;
      if (i > 0 && !(list[i - 1].n < w.n)) return false;
    }
    const auto kept = running_extreme_witnesses(seq, list, options.min_step_nats, maxima);
    return kept.size() == list.size();
  };
  return check(certificate.up, true) && check(certificate.down, false);
}

}  // namespace entorder
