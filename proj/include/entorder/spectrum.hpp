#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entorder/logspace.hpp"

namespace entorder {

using Metadata = std::map<std::string, std::string>;

inline constexpr double kNormalizationTolerance = 1e-9;

enum class Ordering {
  Strict,     ///< reject out-of-order input
  SortInput,  ///< sort nonincreasing before validation
};

/// Schmidt weights of a pure bipartite state, stored as natural logs.
///
/// Weights are strictly positive and nonincreasing. A truncated analytic
/// state carries the mass beyond the stored horizon in `log_tail_bound()`;
/// an exact finite-rank state has a tail of zero (-inf in log form).
/// Instances are immutable and only obtainable through validating factories.
class SchmidtSpectrum {
 public:
  static SchmidtSpectrum from_log_weights(std::vector<double> log_weights,
                                          double log_tail_bound = logspace::kNegInf,
                                          Metadata metadata = {},
                                          Ordering ordering = Ordering::Strict);

  std::span<const double> log_weights() const noexcept { return log_weights_; }
  std::size_t size() const noexcept { return log_weights_.size(); }
  double log_weight(std::size_t n) const { return log_weights_.at(n); }
  double weight(std::size_t n) const;

  double log_tail_bound() const noexcept { return log_tail_; }
  double tail_bound() const;
  bool is_exact() const noexcept { return log_tail_ == logspace::kNegInf; }

  const Metadata& metadata() const noexcept { return metadata_; }
  std::optional<std::string> metadata_value(std::string_view key) const;
  std::optional<double> metadata_number(std::string_view key) const;

  /// sum_n lambda_n + tail - 1, evaluated through log-domain accumulation.
  double normalization_residual() const noexcept { return residual_; }

  friend bool operator==(const SchmidtSpectrum&, const SchmidtSpectrum&) = default;

 private:
  SchmidtSpectrum() = default;

  std::vector<double> log_weights_;
  double log_tail_ = logspace::kNegInf;
  Metadata metadata_;
  double residual_ = 0.0;
};

/// Validates linear-domain weights. Errors: NonPositive, NotSorted, NotNormalized.
SchmidtSpectrum build_spectrum(std::span<const double> weights,
                               Ordering ordering = Ordering::Strict);

/// ln g(n) = ln sum_{I >= n} lambda_I for n = 0..N, where g(N) is the tail bound.
struct TailFunction {
  std::vector<double> log_g;

  std::size_t size() const noexcept { return log_g.size(); }
  double operator[](std::size_t n) const { return log_g[n]; }
};

TailFunction tail_function(const SchmidtSpectrum& s);

/// Number of leading indices n whose g(n) cannot move by more than
/// `log_tolerance` (natural-log units) if the true tail is anywhere in
/// [0, tail_bound]. Equals size() for exact spectra.
std::size_t safe_horizon(const SchmidtSpectrum& s, double log_tolerance);

struct ConditionCheck {
  bool pass = true;
  std::optional<std::size_t> first_failure;
};

struct ConditionReport {
  ConditionCheck positivity;
  ConditionCheck strict_monotonicity;
  ConditionCheck convexity;
  bool normalization_pass = true;
  double normalization_residual = 0.0;

  bool all_pass() const noexcept {
    return positivity.pass && strict_monotonicity.pass && convexity.pass && normalization_pass;
  }
};

/// The four Vidal-monotone conditions on g over n = 0..N.
ConditionReport vidal_conditions(const SchmidtSpectrum& s);

struct SpectrumStats {
  double entropy_bits = 0.0;
  std::optional<std::size_t> schmidt_rank;  ///< empty when truncated
  /// sum_n n lambda_n over stored weights; per-mode photon number. The
  /// two-mode total is twice this.
  double mean_excitation = 0.0;
};

SpectrumStats summary_stats(const SchmidtSpectrum& s);

}  // namespace entorder
