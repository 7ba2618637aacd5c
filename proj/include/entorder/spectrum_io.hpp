#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "entorder/spectrum.hpp"

namespace entorder {

// Spectrum file v1:
//
//   #schmidt-spectrum 1
//   #key value            (metadata, any number; tail_bound is special)
//   -0.12493873660829995  (log10 lambda_n, one per line, index order)
//
// Weights are written so that parsing recovers every natural-log weight
// bit for bit. tail_bound is a plain decimal whose exponent may lie far
// outside the double range (e.g. 3.2e-6021); absent means exact.

/// Errors: ParseError (with line number) or any build_spectrum error.
SchmidtSpectrum parse_spectrum(std::istream& in);
SchmidtSpectrum read_spectrum(const std::filesystem::path& path);

std::string format_spectrum(const SchmidtSpectrum& s);
void write_spectrum(const SchmidtSpectrum& s, const std::filesystem::path& path);

/// ln of a decimal literal m[eE]x with arbitrary integer exponent x.
/// Errors: ParseError for malformed or negative input.
double parse_log_decimal(std::string_view text);
std::string format_log_decimal(double log_value);

}  // namespace entorder
