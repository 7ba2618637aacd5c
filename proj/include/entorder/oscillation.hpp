#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "entorder/spectrum.hpp"

namespace entorder {

/// Largest ln-spread of any g(n) allowed from the unknown part of a tail bound.
inline constexpr double kTruncationLogTolerance = 1e-6;

struct TrendThresholds {
  double drift_nats = 5.0;      ///< growth of a running extreme over the second half
  std::size_t min_windows = 3;  ///< second-half dyadic windows that must extend it
  std::size_t min_points = 64;
  /// Smallest move of a targeted extreme that counts as a new extreme.
  double target_step_nats = 0.05;

  void validate() const;
};

enum class Trend { BoundedBelow, DivergesDown, DivergesUp, Oscillating, Undecided };

std::string_view to_string(Trend trend) noexcept;
/// Down <-> Up; the other labels are fixed. classify(-l) == mirror(classify(l)).
Trend mirror(Trend trend) noexcept;

/// Running-extreme statistics over dyadic sub-windows of a sequence.
///
/// Sub-window j >= 1 covers relative indices [2^{j-1}, 2^j), window 0 is
/// index 0. The "second half" is the later half of these windows, i.e. the
/// index range [~sqrt(len), len), which keeps the test meaningful for
/// sequences whose structure lives on a logarithmic index scale.
struct TrendStats {
  Trend trend = Trend::Undecided;
  double min_fall = 0.0;   ///< drop of the running minimum across the second half
  double max_rise = 0.0;   ///< rise of the running maximum across the second half
  std::size_t min_extensions = 0;
  std::size_t max_extensions = 0;
  std::size_t second_half_start = 0;  ///< relative index
  double drift_nats = 5.0;

  /// Running minimum stabilized: evidence that the sequence is bounded below.
  bool min_stable() const noexcept { return min_fall < drift_nats / 4.0; }
  bool max_stable() const noexcept { return max_rise < drift_nats / 4.0; }
};

/// Relative index where the second half of the dyadic windows begins.
std::size_t dyadic_second_half(std::size_t length) noexcept;

/// Errors: TooShort when fewer than thresholds.min_points values.
TrendStats analyze_trend(std::span<const double> values, const TrendThresholds& thresholds);
Trend classify_trend(std::span<const double> values, const TrendThresholds& thresholds);

/// Inclusive index range [n_min, n_max].
struct Window {
  std::size_t n_min = 0;
  std::size_t n_max = 0;

  std::size_t size() const noexcept { return n_max - n_min + 1; }
  bool contains(std::size_t n) const noexcept { return n >= n_min && n <= n_max; }
  friend bool operator==(const Window&, const Window&) = default;
};

/// l(n) = ln g_a(n) - ln g_b(n) over a window.
struct LogRatioSequence {
  Window window;
  std::vector<double> values;

  double at(std::size_t n) const { return values.at(n - window.n_min); }
};

/// Widest window [0, m) on which neither tail bound can move any g by more
/// than kTruncationLogTolerance. Errors: TruncationUnsafe if empty.
Window default_window(const SchmidtSpectrum& a, const SchmidtSpectrum& b);

/// Errors: TruncationUnsafe when the window reaches past a safe horizon.
LogRatioSequence log_ratio_sequence(const SchmidtSpectrum& a, const SchmidtSpectrum& b,
                                    Window window);

struct Witness {
  std::size_t n = 0;
  double value = 0.0;
  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Finite evidence for limsup l = +inf (up) and liminf l = -inf (down):
/// successive new running extremes of l, each beyond the previous witness
/// (l(n_min) for the first) by at least `min_step_nats`.
struct OscillationCertificate {
  Window window;
  std::vector<Witness> up;
  std::vector<Witness> down;
};

struct CertificateOptions {
  std::size_t min_witnesses = 5;
  double min_step_nats = 1.0;
};

/// Extremes of l found in the neighbourhoods of the oscillation targets
/// x = e^{pi/2 + 2 pi p} and x = e^{3 pi/2 + 2 pi p}, mapped to grid indices
/// through the `delta` and `offset` metadata of each spectrum built from an
/// oscillating curve (k > 0). Both target
/// families are scanned for both extremes so the result is symmetric under
/// swapping a and b. Sorted by index.
struct TargetedExtrema {
  std::vector<Witness> maxima;
  std::vector<Witness> minima;
};

TargetedExtrema targeted_extrema(const SchmidtSpectrum& a, const SchmidtSpectrum& b,
                                 const LogRatioSequence& sequence);

/// Extremes of l over the neighbourhood of one oscillation target
/// theta_j = pi/2 + pi j (sin ln x = +1 for even j, -1 for odd j).
struct TargetRegion {
  std::size_t j = 0;
  std::size_t n_lo = 0;
  std::size_t n_hi = 0;
  double min = 0.0;
  double max = 0.0;
};

/// Subsequence evidence on l: whether a later target region sets a new
/// minimum (maximum) below (above) every earlier region by target_step_nats.
/// Regions touching n_min are skipped: l(n_min) is pinned by normalization
/// and the first region is a boundary transient rather than a tail sample.
///
/// On a log-periodic sequence a quiet dyadic second half says nothing unless
/// it spans a full period, so stability claims also need both target phases
/// inside that tail (`tail_covers_period`).
struct TargetEvidence {
  std::vector<TargetRegion> regions;
  bool min_extended = false;
  bool max_extended = false;
  bool has_targets = false;
  bool tail_covers_period = false;

  bool stability_resolved() const noexcept { return !has_targets || tail_covers_period; }
};

TargetEvidence target_evidence(const SchmidtSpectrum& a, const SchmidtSpectrum& b,
                               const LogRatioSequence& sequence, const TrendThresholds& thresholds);

/// Empty when the witness lists do not reach the required length.
/// Errors: TruncationUnsafe, TooShort.
std::optional<OscillationCertificate> incomparability_certificate(
    const SchmidtSpectrum& a, const SchmidtSpectrum& b, Window window,
    const TrendThresholds& thresholds, const CertificateOptions& options = {});

/// Re-evaluates every witness from the spectra (to 1e-12) and re-checks the
/// running-extreme invariants.
bool verify_certificate(const OscillationCertificate& certificate, const SchmidtSpectrum& a,
                        const SchmidtSpectrum& b, const CertificateOptions& options = {});

}  // namespace entorder
