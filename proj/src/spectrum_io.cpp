#include "entorder/spectrum_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "entorder/error.hpp"

namespace entorder {

namespace {

constexpr long double kLn10 = 2.302585092994045684017991454684364208L;
constexpr std::string_view kHeader = "#schmidt-spectrum 1";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Whole-string long double parse; strtold also takes a leading '+'.
bool parse_long_double(std::string_view text, long double& out) {
  if (text.empty() || text.front() == ' ' || text.front() == '\t') return false;
  const std::string buf(text);
  char* end = nullptr;
  out = std::strtold(buf.c_str(), &end);
  return end == buf.c_str() + buf.size() && std::isfinite(out);
}

double decode_log10(long double v) { return static_cast<double>(v * kLn10); }

std::string print_ld(long double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lg", digits, v);
  return buf;
}

// Shortest decimal (17..21 digits) whose parse reproduces lw exactly.
std::string encode_log_weight(double lw) {
  long double v = static_cast<long double>(lw) / kLn10;
  for (int digits = 17; digits <= 21; ++digits) {
    const auto text = print_ld(v, digits);
    long double back = 0;
    if (parse_long_double(text, back) && decode_log10(back) == lw) return text;
  }
  for (int step = 1; step <= 64; ++step) {
    v = std::nextafter(v, lw < 0 ? -INFINITY : INFINITY);
    const auto text = print_ld(v, 21);
    long double back = 0;
    if (parse_long_double(text, back) && decode_log10(back) == lw) return text;
  }
  return print_ld(static_cast<long double>(lw) / kLn10, 21);
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(Errc::ParseError, "line " + std::to_string(line) + ": " + what, line);
}

}  // namespace

double parse_log_decimal(std::string_view text) {
  text = trim(text);
  const auto e = text.find_last_of("eE");
  const std::string_view mantissa = text.substr(0, e);
  long long exponent = 0;
  if (e != std::string_view::npos) {
    std::string_view exp_text = text.substr(e + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
    if (exp_text.empty() || ec != std::errc() || ptr != exp_text.data() + exp_text.size())
      throw Error(Errc::ParseError, "bad exponent in '" + std::string(text) + "'");
  }
  long double m = 0;
  if (mantissa.find_first_of("eEnN") != std::string_view::npos || !parse_long_double(mantissa, m) || m < 0)
    throw Error(Errc::ParseError, "bad decimal '" + std::string(text) + "'");
  if (m == 0) return -INFINITY;
  return static_cast<double>(std::log(m) + static_cast<long double>(exponent) * kLn10);
}

std::string format_log_decimal(double log_value) {
  if (log_value == -INFINITY) return "0";
  const long double lv = log_value;
  const auto exponent = static_cast<long long>(std::floor(lv / kLn10));
  const long double m = std::exp(lv - static_cast<long double>(exponent) * kLn10);
  auto compose = [&](long double mant, int digits) { return print_ld(mant, digits) + "e" + std::to_string(exponent); };
  for (int digits = 17; digits <= 21; ++digits) {
    const auto text = compose(m, digits);
    if (parse_log_decimal(text) == log_value) return text;
  }
  long double lo = m, hi = m;
  for (int step = 1; step <= 64; ++step) {
    lo = std::nextafter(lo, 0.0L);
    hi = std::nextafter(hi, 10.0L);
    for (long double cand : {lo, hi}) {
      const auto text = compose(cand, 21);
      if (parse_log_decimal(text) == log_value) return text;
    }
  }
  return compose(m, 21);
}

SchmidtSpectrum parse_spectrum(std::istream& in) {
  std::string raw;
  std::size_t line = 0;
  if (!std::getline(in, raw)) fail(1, "empty file, expected '#schmidt-spectrum 1'");
  ++line;
  if (trim(raw) != kHeader) fail(1, "expected '#schmidt-spectrum 1'");

  Metadata meta;
  double log_tail = -INFINITY;
  std::vector<double> lw;
  while (std::getline(in, raw)) {
    ++line;
    const auto text = trim(raw);
    if (text.empty()) continue;
    if (text.front() == '#') {
      if (!lw.empty()) fail(line, "metadata after the first weight");
      const auto body = text.substr(1);
      const auto split = body.find_first_of(" \t");
      const std::string key(body.substr(0, split));
      const std::string value(split == std::string_view::npos ? std::string_view{} : trim(body.substr(split)));
      if (key.empty()) fail(line, "metadata line without a key");
      if (key == "tail_bound") {
        try {
          log_tail = parse_log_decimal(value);
        } catch (const Error& e) {
          fail(line, e.what());
        }
        continue;
      }
      if (!meta.emplace(key, value).second) fail(line, "duplicate metadata key '" + key + "'");
      continue;
    }
    long double v = 0;
    if (!parse_long_double(text, v)) fail(line, "not a decimal log10 weight: '" + std::string(text) + "'");
    lw.push_back(decode_log10(v));
  }
  if (lw.empty()) fail(line + 1, "no weights");
  return SchmidtSpectrum::from_log_weights(std::move(lw), log_tail, std::move(meta));
}

SchmidtSpectrum read_spectrum(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path.string(), 0);
  return parse_spectrum(in);
}

std::string format_spectrum(const SchmidtSpectrum& s) {
  std::ostringstream out;
  out << kHeader << '\n';
  for (const auto& [key, value] : s.metadata()) {
    if (key == "tail_bound") continue;
    out << '#' << key << ' ' << value << '\n';
  }
  if (!s.is_exact()) out << "#tail_bound " << format_log_decimal(s.log_tail_bound()) << '\n';
  for (double lw : s.log_weights()) out << encode_log_weight(lw) << '\n';
  return out.str();
}

void write_spectrum(const SchmidtSpectrum& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path.string());
  out << format_spectrum(s);
  if (!out) throw Error(Errc::InvalidArgument, "write failed for " + path.string());
}

}  // namespace entorder
