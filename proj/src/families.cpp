#include "entorder/families.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "entorder/detail/p_function.hpp"
#include "entorder/error.hpp"
#include "entorder/kernels.hpp"
#include "entorder/numfmt.hpp"

namespace entorder {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense condition grid used by discretize; coarsened only when the range
// would exceed kMaxCheckPoints.
constexpr double kCheckStep = 0.01;
constexpr double kMaxCheckPoints = 5e7;
constexpr std::size_t kFlagBlock = std::size_t{1} << 16;

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw Error(Errc::InvalidArgument, std::string(what) + " must be positive and finite");
}

}  // namespace

PValues eval_p(double r, double x) {
  require_positive(r, "r");
  if (!(x > 1.0)) throw Error(Errc::DomainError, "p_r(x) needs x > 1, got " + format_g17(x));
  const auto v = detail::p_triple(r, x);
  return {v.p, v.dp, v.d2p};
}

VidalCurve::VidalCurve(unsigned k, double r, double offset) : k_(k), r_(r), offset_(offset) {
  require_positive(r, "r");
  if (!(offset >= 0.0) || !std::isfinite(offset))
    throw Error(Errc::InvalidArgument, "offset must be nonnegative");
}

double VidalCurve::log_d(double x) const {
  if (k_ == 0) return -x;
  const double p = p_at(x).p;
  if (!(p > 0.0)) throw Error(Errc::NonPositiveP, "p <= 0 at x = " + format_g17(x));
  return -x + static_cast<double>(k_) * std::log(p);
}

CurveConditions curve_conditions(const VidalCurve& curve, double x) {
  if (curve.k() == 0) return {1.0, 1.0};
  const auto v = curve.p_at(x);
  if (!(v.p > 0.0)) throw Error(Errc::NonPositiveP, "p <= 0 at x = " + format_g17(x));
  const auto f = detail::curve_functionals(curve.k(), {v.p, v.dp, v.d2p});
  return {f.monotonicity, f.convexity};
}

double find_common_offset(unsigned k, std::span<const double> rs, const OffsetSearch& search) {
  require_positive(search.grid_step, "grid_step");
  require_positive(search.horizon, "horizon");
  if (rs.empty()) throw Error(Errc::InvalidArgument, "no r values given");
  for (double r : rs) require_positive(r, "r");

  std::vector<kernels::CurveShape> shapes;
  for (double r : rs) shapes.push_back({k, r});

  const double step = search.grid_step;
  const double a_max = search.a_max.value_or(1e6 * step);
  const auto span_points = static_cast<std::size_t>(std::ceil(search.horizon / step));
  const auto last_candidate = static_cast<std::size_t>(std::floor(a_max / step));

  // Offsets and x-grid share the step, so y = a + x sits on the grid
  // y_m = m * step and one flag array serves every candidate offset.
  std::vector<std::uint8_t> flags;
  auto bad = [&](std::size_t m) {
    while (m >= flags.size()) {
      const std::size_t begin = flags.size();
      flags.resize(begin + kFlagBlock);
      kernels::parallel::condition_flags(shapes, static_cast<double>(begin) * step, step,
                                         search.margin,
                                         std::span(flags).subspan(begin, kFlagBlock));
    }
    return flags[m] != 0;
  };

  std::size_t candidate = 0;
  std::size_t m = 0;
  while (m <= candidate + span_points) {
    if (bad(m)) {
      candidate = m + 1;
      if (candidate > last_candidate)
        throw Error(Errc::NotFound, "no offset up to " + format_g17(a_max) + " satisfies the conditions");
    }
    ++m;
  }
  return static_cast<double>(candidate) * step;
}

double find_offset(unsigned k, double r, const OffsetSearch& search) {
  const double rs[] = {r};
  return find_common_offset(k, rs, search);
}

double delta_from_q(double q, DeltaConvention convention) {
  if (!(q > 0.0 && q < 1.0)) throw Error(Errc::QOutOfRange, "q must lie in (0, 1) to define Delta");
  return convention == DeltaConvention::Schmidt ? -2.0 * std::log(q) : -std::log(q);
}

std::optional<DeltaConvention> parse_delta_convention(std::string_view text) {
  if (text == "schmidt") return DeltaConvention::Schmidt;
  if (text == "amplitude") return DeltaConvention::Amplitude;
  return std::nullopt;
}

SchmidtSpectrum tmss(double q, std::size_t n) {
  if (!(q >= 0.0 && q < 1.0)) throw Error(Errc::QOutOfRange, "q must lie in [0, 1), got " + format_g17(q));
  if (n == 0) throw Error(Errc::InvalidArgument, "horizon must be at least 1");
  Metadata meta{{"family", "tmss"}, {"q", format_g17(q)}, {"k", "0"}, {"offset", "0"}};
  if (q == 0.0) return SchmidtSpectrum::from_log_weights({0.0}, logspace::kNegInf, std::move(meta));

  const double log_q2 = 2.0 * std::log(q);
  const double head = std::log1p(-q * q);
  std::vector<double> lw(n);
  for (std::size_t i = 0; i < n; ++i) lw[i] = head + static_cast<double>(i) * log_q2;
  meta["delta"] = format_g17(-log_q2);
  return SchmidtSpectrum::from_log_weights(std::move(lw), static_cast<double>(n) * log_q2,
                                           std::move(meta));
}

namespace {

// `scan` re-checks the curve conditions on a dense grid; callers whose offset
// came from find_common_offset over the same range have already done so.
SchmidtSpectrum discretize_impl(const VidalCurve& curve, double delta, std::size_t n, Metadata extra,
                                bool scan) {
  require_positive(delta, "delta");
  if (n == 0) throw Error(Errc::InvalidArgument, "horizon must be at least 1");
  if (curve.k() > 0 && !(curve.offset() > 1.0))
    throw Error(Errc::ConditionViolated, "offset must exceed 1 so that ln(x + a) > 0 at x = 0");

  const double range = delta * static_cast<double>(n);
  const kernels::CurveShape shape{curve.k(), curve.r()};
  if (curve.k() > 0 && scan) {
    const double step = std::max(kCheckStep, range / kMaxCheckPoints);
    std::vector<std::uint8_t> flags(static_cast<std::size_t>(std::ceil(range / step)) + 1);
    kernels::parallel::condition_flags(std::span(&shape, 1), curve.offset(), step, 0.0, flags);
    if (auto it = std::find(flags.begin(), flags.end(), 1); it != flags.end()) {
      const double x = static_cast<double>(it - flags.begin()) * step;
      throw Error(Errc::ConditionViolated, "curve conditions fail at x = " + format_g17(x));
    }
  }

  std::vector<double> log_g(n + 1);
  kernels::parallel::log_curve_values(shape, curve.offset(), delta, log_g);
  const double log_d0 = log_g[0];
  for (double& v : log_g) v -= log_d0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(log_g[i + 1] < log_g[i]))
      throw Error(Errc::ConditionViolated, "g is not strictly decreasing at n = " + std::to_string(i));
  }

  std::vector<double> lw(n);
  kernels::parallel::log_weights_from_tail(log_g, lw);

  Metadata meta = std::move(extra);
  meta["k"] = std::to_string(curve.k());
  meta["r"] = format_g17(curve.r());
  meta["offset"] = format_g17(curve.offset());
  meta["delta"] = format_g17(delta);
  try {
    return SchmidtSpectrum::from_log_weights(std::move(lw), log_g[n], std::move(meta));
  } catch (const Error& e) {
    if (e.code() == Errc::NotSorted)
      throw Error(Errc::ConditionViolated, std::string("discrete convexity lost: ") + e.what());
    throw;
  }
}

}  // namespace

SchmidtSpectrum discretize(const VidalCurve& curve, double delta, std::size_t n, Metadata extra) {
  return discretize_impl(curve, delta, n, std::move(extra), true);
}

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::Tmss: return "tmss";
    case Family::Xi: return "xi";
    case Family::Psi: return "psi";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view text) {
  if (text == "tmss") return Family::Tmss;
  if (text == "xi") return Family::Xi;
  if (text == "psi") return Family::Psi;
  return std::nullopt;
}

double resolved_delta(const FamilyParams& params) {
  if (params.delta) {
    require_positive(*params.delta, "delta");
    return *params.delta;
  }
  return delta_from_q(params.q.value_or(0.5), params.convention);
}

SchmidtSpectrum generate(const FamilyParams& params) {
  if (params.family == Family::Tmss) {
    double q = params.q.value_or(0.5);
    if (!params.q && params.delta) {
      const double delta = resolved_delta(params);
      q = std::exp(params.convention == DeltaConvention::Schmidt ? -0.5 * delta : -delta);
    }
    return tmss(q, params.n);
  }

  const double delta = resolved_delta(params);
  const unsigned k = params.family == Family::Xi ? 1u : params.k;
  const double r = params.family == Family::Xi ? params.r : 1.0;
  const double offset =
      params.offset ? *params.offset
                    : find_offset(k, r, {params.grid_step, delta * static_cast<double>(params.n),
                                         params.margin, std::nullopt});
  Metadata meta{{"family", std::string(to_string(params.family))}};
  if (params.q) meta["q"] = format_g17(*params.q);
  return discretize(VidalCurve(k, r, offset), delta, params.n, std::move(meta));
}

XiFamily::XiFamily(double delta, std::size_t n, std::span<const double> rs, double grid_step,
                   double margin)
    : delta_(delta), n_(n), grid_step_(grid_step), rs_(rs.begin(), rs.end()) {
  require_positive(delta, "delta");
  offset_ = find_common_offset(1, rs, {grid_step, delta * static_cast<double>(n), margin, std::nullopt});
}

SchmidtSpectrum XiFamily::operator()(double r) const {
  const bool verified = grid_step_ <= kCheckStep && std::find(rs_.begin(), rs_.end(), r) != rs_.end();
  return discretize_impl(VidalCurve(1, r, offset_), delta_, n_, {{"family", "xi"}}, !verified);
}

double log_excitation_remainder_bound(const SchmidtSpectrum& s) {
  if (s.is_exact()) return logspace::kNegInf;
  const auto delta = s.metadata_number("delta");
  const auto k_value = s.metadata_number("k");
  const double offset = s.metadata_number("offset").value_or(0.0);
  const double r = s.metadata_number("r").value_or(1.0);
  if (!delta || !k_value || !(*delta > 0.0) || *k_value < 0.0) return kInf;
  const double k = *k_value;
  if (k > 0.0 && !(offset > 1.0 && r > 0.0)) return kInf;

  // sum_{n>=N} n lambda_n = N g(N) + sum_{n>N} g(n), and for n > N
  //   g(n) <= G(n) = e^{-Delta n} ((2 L_n^r + 1/ln a) / p(a))^k,  L_n = ln(Delta n + a),
  // whose step ratio is at most e^{-Delta} (1 + Delta / (y ln y))^{r k} at y = y_{N+1}.
  const double big_n = static_cast<double>(s.size());
  const double y = *delta * (big_n + 1.0) + offset;
  double log_G = -*delta * (big_n + 1.0);
  double log_ratio = -*delta;
  if (k > 0.0) {
    if (!(y > 1.0)) return kInf;
    const double L = std::log(y);
    const double envelope = 2.0 * std::pow(L, r) + 1.0 / std::log(offset);
    log_G += k * (std::log(envelope) - std::log(eval_p(r, offset).p));
    log_ratio += r * k * std::log1p(*delta / (y * L));
  }
  if (!(log_ratio < 0.0)) return kInf;
  const double head = std::log(big_n) + s.log_tail_bound();
  return logspace::add(head, log_G - logspace::log1m_exp(log_ratio));
}

}  // namespace entorder
