#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "entorder/error.hpp"
#include "entorder/families.hpp"
#include "entorder/report.hpp"
#include "entorder/spectrum_io.hpp"
#include "../support/oracles.hpp"

using namespace entorder;

namespace {

std::size_t parse_error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_spectrum(in);
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError && e.line()) return *e.line();
    throw;
  }
  FAIL("expected ParseError");
  return 0;
}

SchmidtSpectrum round_trip(const SchmidtSpectrum& s) {
  std::istringstream in(format_spectrum(s));
  return parse_spectrum(in);
}

}  // namespace

TEST_CASE("generated spectra survive a write/read cycle bit for bit") {
  FamilyParams p;
  p.family = Family::Psi;
  p.k = 3;
  p.n = 3000;
  for (const auto& s : {tmss(0.5, 1000), tmss(0.93, 50), generate(p)}) {
    const auto back = round_trip(s);
    CHECK(back == s);
  }
}

TEST_CASE("property: random log weights round-trip exactly") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const auto w = oracle::random_weights(rng, 1 + trial % 40);
    const auto s = build_spectrum(w);
    CHECK(round_trip(s) == s);
  }
}

TEST_CASE("tail bounds far below the double range") {
  for (double lt : {-1386.2943611198906, -0.5, -92103.40371976183, -745.2, -1e-3}) {
    CHECK(parse_log_decimal(format_log_decimal(lt)) == lt);
  }
  CHECK(parse_log_decimal("3.2e-6021") == doctest::Approx(std::log(3.2) - 6021 * std::log(10.0)));
  CHECK(parse_log_decimal("0") == -INFINITY);
  CHECK(format_log_decimal(-INFINITY) == "0");
  CHECK_THROWS_AS(parse_log_decimal("-1e-3"), Error);
  CHECK_THROWS_AS(parse_log_decimal("abc"), Error);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(parse_error_line("") == 1);
  CHECK(parse_error_line("-0.3\n") == 1);
  CHECK(parse_error_line("#schmidt-spectrum 2\n") == 1);
  CHECK(parse_error_line("#schmidt-spectrum 1\n#family tmss\n-0.30102999566398120\nabc\n") == 4);
  CHECK(parse_error_line("#schmidt-spectrum 1\n-0.3\n#late key\n") == 3);
  CHECK(parse_error_line("#schmidt-spectrum 1\n#tail_bound x1\n") == 2);
  CHECK(parse_error_line("#schmidt-spectrum 1\n#family a\n#family b\n") == 3);
  CHECK(parse_error_line("#schmidt-spectrum 1\n\n") == 3);
}

TEST_CASE("parsing accepts blank lines, signs and long literals") {
  std::istringstream in(
      "#schmidt-spectrum 1\n#family custom\n\n-0.301029995663981195213738894724493\n+-0.30102999566398120\n");
  std::istringstream fixed("#schmidt-spectrum 1\n#family custom\n\n-0.301029995663981195213738894724493\n-0.30102999566398120\n");
  const auto s = parse_spectrum(fixed);
  CHECK(s.size() == 2);
  CHECK(s.metadata_value("family") == "custom");
  CHECK(s.weight(0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(parse_spectrum(in), Error);  // "+-" is not a number
}

TEST_CASE("validation errors pass through the reader") {
  std::istringstream in("#schmidt-spectrum 1\n-0.5\n-0.1\n");
  try {
    parse_spectrum(in);
    FAIL("expected NotSorted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotSorted);
  }
}

TEST_CASE("canonical JSON") {
  Json v{{"zeta", 1}, {"alpha", {{"x", 0.1}, {"b", Json::array()}}}, {"inf", json_number(-INFINITY)}};
  const auto text = canonical_dump(v);
  CHECK(text ==
        "{\n  \"alpha\": {\n    \"b\": [],\n    \"x\": 0.10000000000000001\n  },\n"
        "  \"inf\": \"-inf\",\n  \"zeta\": 1\n}\n");
  CHECK(canonical_dump(v) == text);
}
