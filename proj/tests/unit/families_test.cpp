#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "entorder/convertibility.hpp"
#include "entorder/error.hpp"
#include "entorder/families.hpp"
#include "../support/oracles.hpp"

using namespace entorder;

namespace {

// Independent re-scan of the curve conditions with long-double finite
// differences of ln d. Returns the first x in [0, H] where they fail.
std::optional<double> first_violation(unsigned k, double r, double a, double horizon, double step) {
  for (double x = 0.0; x <= horizon; x += step) {
    if (!(x + a - 1e-3 > 1.0)) return x;
    const auto c = oracle::curve_fd(k, r, a, x);
    if (!(c.d1 > 0) || !(c.d2 >= -1e-9)) return x;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("p at x = e^{pi/2} is pi + 2/pi") {
  const auto v = eval_p(1.0, std::exp(std::numbers::pi / 2));
  CHECK(v.p == doctest::Approx(std::numbers::pi + 2 / std::numbers::pi).epsilon(1e-14));
  CHECK_THROWS_AS(eval_p(1.0, 1.0), Error);
  CHECK_THROWS_AS(eval_p(0.0, 3.0), Error);
}

TEST_CASE("analytic derivatives agree with finite differences") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lx(std::log(2.0), std::log(1e6));
  for (double r : {0.5, 1.0, 1.7, 2.0, 3.0}) {
    for (int i = 0; i < 500; ++i) {
      const double x = std::exp(lx(rng));
      const auto v = eval_p(r, x);
      const auto fd = oracle::p_fd(r, x);
      CHECK(std::abs(v.dp - fd.d1) <= 1e-6 * std::abs(fd.d1));
      CHECK(std::abs(v.d2p - fd.d2) <= 1e-6 * std::abs(fd.d2));
    }
  }
}

TEST_CASE("log d is -x + k ln p") {
  const VidalCurve c(3, 1.5, 2.0);
  for (double x : {0.0, 1.0, 17.5, 400.0}) {
    CHECK(c.log_d(x) == -x + 3.0 * std::log(eval_p(1.5, x + 2.0).p));
  }
  CHECK(VidalCurve(0, 1.0, 0.0).log_d(5.0) == -5.0);
}

TEST_CASE("offsets found on the 0.01 grid") {
  const double horizon = 1.3862943611198906 * 2000;
  CHECK(find_offset(0, 1.0, {0.01, horizon}) == 0.0);
  // Frozen from a grid scan; the independent re-scan below confirms them.
  CHECK(find_offset(1, 1.0, {0.01, horizon}) == doctest::Approx(1.01).epsilon(1e-12));
  CHECK(find_offset(2, 1.0, {0.01, horizon}) == doctest::Approx(1.01).epsilon(1e-12));
  CHECK(find_offset(3, 1.0, {0.01, horizon}) == doctest::Approx(1.01).epsilon(1e-12));
  CHECK(find_offset(4, 1.0, {0.01, horizon}) == doctest::Approx(3.79).epsilon(1e-12));
}

TEST_CASE("finer re-scan confirms the offsets and their minimality") {
  const double horizon = 1.3862943611198906 * 2000;
  for (unsigned k = 1; k <= 4; ++k) {
    const double a = find_offset(k, 1.0, {0.01, horizon});
    CAPTURE(k);
    CHECK_FALSE(first_violation(k, 1.0, a, horizon, 0.001).has_value());
  }
  // One grid step below the k = 4 offset the conditions break near x = 0.
  const auto bad = first_violation(4, 1.0, 3.78, 1.0, 0.001);
  REQUIRE(bad.has_value());
  const auto cc = curve_conditions(VidalCurve(4, 1.0, 3.78), *bad);
  CHECK((cc.monotonicity <= 0.0 || cc.convexity < 0.0));
}

TEST_CASE("a common offset covers every member") {
  const std::vector<double> rs{1.0, 1.25, 1.5, 2.0};
  const double a = find_common_offset(1, rs, {0.01, 2000.0});
  for (double r : rs) CHECK(a >= find_offset(1, r, {0.01, 2000.0}));
}

TEST_CASE("discretize rejects curves that are not tail functions") {
  CHECK_THROWS_AS(discretize(VidalCurve(1, 1.0, 1.0), 1.0, 100), Error);
  try {
    discretize(VidalCurve(4, 1.0, 1.01), 0.5, 100);
    FAIL("expected ConditionViolated");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ConditionViolated);
  }
}

TEST_CASE("discretized psi spectra pass the Vidal conditions") {
  for (unsigned k = 0; k <= 4; ++k) {
    FamilyParams p;
    p.family = Family::Psi;
    p.k = k;
    p.n = 2000;
    const auto s = generate(p);
    CAPTURE(k);
    CHECK(vidal_conditions(s).all_pass());
    CHECK(s.metadata_value("family") == "psi");
    CHECK(s.metadata_number("k") == k);
  }
}

TEST_CASE("psi with k = 0 is the squeezed state") {
  for (auto conv : {DeltaConvention::Schmidt, DeltaConvention::Amplitude}) {
    FamilyParams p;
    p.family = Family::Psi;
    p.q = 0.6;
    p.convention = conv;
    p.n = 300;
    const auto psi = generate(p);
    const double q_equiv = conv == DeltaConvention::Schmidt ? 0.6 : std::sqrt(0.6);  // amplitude: g(n) = q^n
    const auto t = tmss(q_equiv, 300);
    for (std::size_t n = 0; n < 300; ++n) CHECK(psi.log_weight(n) == doctest::Approx(t.log_weight(n)).epsilon(1e-12));
    CHECK(slocc_decide(psi, t).verdict == Verdict::TwoWay);
  }
}

TEST_CASE("tmss from delta respects the convention") {
  FamilyParams p;
  p.delta = 2.0;
  p.n = 10;
  p.convention = DeltaConvention::Amplitude;
  CHECK(generate(p).metadata_number("q") == doctest::Approx(std::exp(-2.0)));
  p.convention = DeltaConvention::Schmidt;
  CHECK(generate(p).metadata_number("q") == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("excitation remainder bound") {
  // k = 0: the bound is the exact remainder sum_{n >= N} n q^{2n} (1 - q^2).
  const double q = 0.5;
  const std::size_t N = 20;
  double exact = 0.0;
  for (std::size_t n = N; n < 400; ++n) exact += n * std::pow(q, 2.0 * n) * (1 - q * q);
  CHECK(std::exp(log_excitation_remainder_bound(tmss(q, N))) == doctest::Approx(exact).epsilon(1e-12));

  CHECK(log_excitation_remainder_bound(build_spectrum(std::vector{0.5, 0.5})) == -INFINITY);

  // k > 0: bounds the remainder of a longer discretization of the same curve.
  const VidalCurve c(2, 1.0, 1.01);
  const auto s = discretize(c, 1.0, 60);
  const auto longer = discretize(c, 1.0, 600);
  double rem = 0.0;
  for (std::size_t n = 60; n < 600; ++n) rem += n * longer.weight(n);
  const double bound = std::exp(log_excitation_remainder_bound(s));
  CHECK(bound >= rem);
  CHECK(bound < 1e3 * rem);
}

TEST_CASE("xi family shares one offset") {
  const std::vector<double> rs{1.0, 1.5, 2.0};
  const XiFamily fam(1.0, 500, rs);
  for (double r : rs) {
    const auto s = fam(r);
    CHECK(s.metadata_number("offset") == fam.offset());
    CHECK(vidal_conditions(s).all_pass());
  }
}
