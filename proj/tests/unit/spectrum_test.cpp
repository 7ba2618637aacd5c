#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "entorder/error.hpp"
#include "entorder/families.hpp"
#include "entorder/spectrum.hpp"
#include "../support/oracles.hpp"

using namespace entorder;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an entorder::Error");
  return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("build_spectrum validates order, positivity and normalization") {
  const auto s = build_spectrum(std::vector{0.5, 0.5});
  CHECK(s.size() == 2);
  CHECK(s.is_exact());
  CHECK(s.weight(0) == doctest::Approx(0.5));

  CHECK(code_of([] { build_spectrum(std::vector{0.3, 0.7}); }) == Errc::NotSorted);
  CHECK(code_of([] { build_spectrum(std::vector{0.6, 0.5}); }) == Errc::NotNormalized);
  CHECK(code_of([] { build_spectrum(std::vector{1.0, 0.0}); }) == Errc::NonPositive);
  CHECK(code_of([] { build_spectrum(std::vector<double>{}); }) == Errc::InvalidArgument);

  const auto sorted = build_spectrum(std::vector{0.3, 0.7}, Ordering::SortInput);
  CHECK(sorted.weight(0) == doctest::Approx(0.7));
}

TEST_CASE("normalization tolerance is 1e-9") {
  CHECK_NOTHROW(build_spectrum(std::vector{0.5 + 5e-10, 0.5}));
  CHECK_THROWS_AS(build_spectrum(std::vector{0.5 + 5e-9, 0.5}), Error);
}

TEST_CASE("tail function and Vidal conditions of a finite spectrum") {
  const auto s = build_spectrum(std::vector{0.4, 0.3, 0.3});
  const auto g = tail_function(s);
  REQUIRE(g.size() == 4);
  CHECK(std::exp(g[0]) == doctest::Approx(1.0));
  CHECK(std::exp(g[1]) == doctest::Approx(0.6));
  CHECK(std::exp(g[2]) == doctest::Approx(0.3));
  CHECK(g[3] == -INFINITY);

  // Ties keep lambda_n > 0, so g stays strictly decreasing; only g(3) = 0
  // breaks positivity, as for every exact finite-rank state.
  const auto c = vidal_conditions(s);
  CHECK(c.strict_monotonicity.pass);
  CHECK(c.convexity.pass);
  CHECK(c.normalization_pass);
  CHECK_FALSE(c.positivity.pass);
  CHECK(c.positivity.first_failure == 3);
}

TEST_CASE("tmss closed forms") {
  const auto product = tmss(0.0, 10);
  CHECK(product.size() == 1);
  CHECK(product.weight(0) == 1.0);
  CHECK(product.is_exact());

  CHECK(tmss(0.5, 100).weight(0) == doctest::Approx(0.75).epsilon(1e-15));

  const auto s = tmss(0.9, 500);
  const auto g = tail_function(s);
  for (std::size_t n = 0; n <= 500; n += 50)
    CHECK(g[n] == doctest::Approx(2.0 * n * std::log(0.9)).epsilon(1e-12));
  CHECK(vidal_conditions(s).all_pass());

  CHECK(code_of([] { tmss(1.0, 10); }) == Errc::QOutOfRange);
  CHECK(code_of([] { tmss(-0.1, 10); }) == Errc::QOutOfRange);
}

TEST_CASE("summary statistics") {
  const auto s = build_spectrum(std::vector{0.5, 0.5});
  const auto st = summary_stats(s);
  CHECK(st.entropy_bits == doctest::Approx(1.0));
  CHECK(st.schmidt_rank == 2);
  CHECK(st.mean_excitation == doctest::Approx(0.5));

  // q^2 / (1 - q^2) at q = 0.5.
  const auto t = summary_stats(tmss(0.5, 2000));
  CHECK(std::abs(t.mean_excitation - 1.0 / 3.0) < 1e-12);
  CHECK_FALSE(t.schmidt_rank.has_value());
}

TEST_CASE("safe horizon of a truncated spectrum") {
  const auto s = tmss(0.5, 100);
  // g(n) = q^{2n}; the tail q^{200} moves g(n) by a factor 1 + q^{2(100-n)}.
  const auto h = safe_horizon(s, 1e-6);
  CHECK(h == 91);
  CHECK(safe_horizon(build_spectrum(std::vector{0.5, 0.5}), 1e-6) == 2);
}

TEST_CASE("property: sorted input always yields a convex tail function") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    auto w = oracle::random_weights(rng, 1 + trial % 12);
    std::shuffle(w.begin(), w.end(), rng);
    const auto s = build_spectrum(w, Ordering::SortInput);
    CHECK(vidal_conditions(s).convexity.pass);
  }
}

TEST_CASE("property: moving weight to a higher index raises the mean excitation") {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rank = 3 + trial % 6;
    auto w = oracle::random_weights(rng, rank);
    std::uniform_int_distribution<std::size_t> pick(0, rank - 2);
    const std::size_t i = pick(rng);
    const std::size_t j = i + 1 + pick(rng) % (rank - 1 - i);
    // Largest transfer that keeps the weights nonincreasing.
    double room = (j == i + 1) ? 0.5 * (w[i] - w[j]) : std::min(w[i] - w[i + 1], w[j - 1] - w[j]);
    if (!(room > 1e-6)) continue;
    auto moved = w;
    moved[i] -= 0.5 * room;
    moved[j] += 0.5 * room;
    const double before = summary_stats(build_spectrum(w)).mean_excitation;
    const double after = summary_stats(build_spectrum(moved)).mean_excitation;
    CHECK(std::isfinite(after));
    CHECK(after > before);
    ++checked;
  }
  CHECK(checked > 100);
}
