#include "entorder/spectrum.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "entorder/error.hpp"

namespace entorder {

namespace {

double total_log_mass(std::span<const double> log_weights, double log_tail) {
  std::vector<double> terms(log_weights.begin(), log_weights.end());
  terms.push_back(log_tail);
  return logspace::sum(terms);
}

}  // namespace

SchmidtSpectrum SchmidtSpectrum::from_log_weights(std::vector<double> log_weights,
                                                  double log_tail_bound, Metadata metadata,
                                                  Ordering ordering) {
  if (log_weights.empty()) throw Error(Errc::InvalidArgument, "spectrum has no weights");
  for (std::size_t n = 0; n < log_weights.size(); ++n) {
    const double lw = log_weights[n];
    if (std::isnan(lw) || lw == std::numeric_limits<double>::infinity())
      throw Error(Errc::InvalidArgument, "weight " + std::to_string(n) + " is not finite");
    if (lw == logspace::kNegInf)
      throw Error(Errc::NonPositive, "weight " + std::to_string(n) + " is zero");
  }
  if (std::isnan(log_tail_bound) || log_tail_bound > 0.0)
    throw Error(Errc::InvalidArgument, "tail bound must lie in [0, 1]");

  if (ordering == Ordering::SortInput) {
    std::sort(log_weights.begin(), log_weights.end(), std::greater<>());
  } else {
    for (std::size_t n = 0; n + 1 < log_weights.size(); ++n) {
      if (log_weights[n] < log_weights[n + 1])
        throw Error(Errc::NotSorted, "weights increase at index " + std::to_string(n + 1));
    }
  }

  const double residual = std::expm1(total_log_mass(log_weights, log_tail_bound));
  if (!(std::abs(residual) <= kNormalizationTolerance))
    throw Error(Errc::NotNormalized, "sum of weights differs from 1 by " + std::to_string(residual));

  SchmidtSpectrum s;
  s.log_weights_ = std::move(log_weights);
  s.log_tail_ = log_tail_bound;
  s.metadata_ = std::move(metadata);
  s.residual_ = residual;
  return s;
}

double SchmidtSpectrum::weight(std::size_t n) const { return std::exp(log_weights_.at(n)); }

double SchmidtSpectrum::tail_bound() const { return std::exp(log_tail_); }

std::optional<std::string> SchmidtSpectrum::metadata_value(std::string_view key) const {
  auto it = metadata_.find(std::string(key));
  if (it == metadata_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> SchmidtSpectrum::metadata_number(std::string_view key) const {
  auto text = metadata_value(key);
  if (!text) return std::nullopt;
  double value = 0.0;
  const char* first = text->data();
  const char* last = first + text->size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

SchmidtSpectrum build_spectrum(std::span<const double> weights, Ordering ordering) {
  std::vector<double> log_weights;
  log_weights.reserve(weights.size());
  for (std::size_t n = 0; n < weights.size(); ++n) {
    const double w = weights[n];
    if (!std::isfinite(w)) throw Error(Errc::InvalidArgument, "weight " + std::to_string(n) + " is not finite");
    if (!(w > 0.0)) throw Error(Errc::NonPositive, "weight " + std::to_string(n) + " is not positive");
    log_weights.push_back(std::log(w));
  }
  return SchmidtSpectrum::from_log_weights(std::move(log_weights), logspace::kNegInf, {}, ordering);
}

TailFunction tail_function(const SchmidtSpectrum& s) {
  const auto lw = s.log_weights();
  TailFunction g;
  g.log_g.resize(lw.size() + 1);
  g.log_g[lw.size()] = s.log_tail_bound();
  for (std::size_t n = lw.size(); n-- > 0;) g.log_g[n] = logspace::add(g.log_g[n + 1], lw[n]);
  return g;
}

std::size_t safe_horizon(const SchmidtSpectrum& s, double log_tolerance) {
  if (s.is_exact()) return s.size();
  const auto lw = s.log_weights();
  // Stored mass from n onward, without the tail.
  std::vector<double> stored(lw.size());
  double acc = logspace::kNegInf;
  for (std::size_t n = lw.size(); n-- > 0;) {
    acc = logspace::add(acc, lw[n]);
    stored[n] = acc;
  }
  for (std::size_t n = 0; n < lw.size(); ++n) {
    const double spread = std::log1p(std::exp(s.log_tail_bound() - stored[n]));
    if (!(spread <= log_tolerance)) return n;
  }
  return lw.size();
}

ConditionReport vidal_conditions(const SchmidtSpectrum& s) {
  ConditionReport report;
  const auto g = tail_function(s);
  const auto lw = s.log_weights();

  for (std::size_t n = 0; n < g.size(); ++n) {
    if (!(g[n] > logspace::kNegInf)) {
      report.positivity = {false, n};
      break;
    }
  }
  // g(n) > g(n+1) is lambda_n > 0; also require it to survive rounding.
  for (std::size_t n = 0; n < lw.size(); ++n) {
    if (!(lw[n] > logspace::kNegInf) || !(g[n] > g[n + 1])) {
      report.strict_monotonicity = {false, n};
      break;
    }
  }
  // g(n+1) <= (g(n) + g(n+2)) / 2  <=>  lambda_{n+1} <= lambda_n
  for (std::size_t n = 0; n + 1 < lw.size(); ++n) {
    if (lw[n + 1] > lw[n]) {
      report.convexity = {false, n};
      break;
    }
  }
  report.normalization_residual = std::expm1(g[0]);
  report.normalization_pass = std::abs(report.normalization_residual) <= kNormalizationTolerance;
  return report;
}

SpectrumStats summary_stats(const SchmidtSpectrum& s) {
  SpectrumStats stats;
  const auto lw = s.log_weights();
  double entropy_nats = 0.0;
  double mean = 0.0;
  for (std::size_t n = 0; n < lw.size(); ++n) {
    const double w = std::exp(lw[n]);
    entropy_nats -= w * lw[n];
    mean += static_cast<double>(n) * w;
  }
  stats.entropy_bits = entropy_nats / std::numbers::ln2;
  stats.mean_excitation = mean;
  if (s.is_exact()) stats.schmidt_rank = lw.size();
  return stats;
}

}  // namespace entorder
