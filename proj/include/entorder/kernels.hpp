#pragma once

// Data-parallel inner loops. Each kernel exists twice with the same
// signature: `serial` is the reference implementation, `parallel` the
// OpenMP one used by the library. Both write one output per index with no
// cross-index reduction, so their results are bit-identical.

#include <cstddef>
#include <cstdint>
#include <span>

namespace entorder::kernels {

/// Shape of p_r(y)^k without the offset; conditions are evaluated at the
/// absolute argument y of p.
struct CurveShape {
  unsigned k = 0;
  double r = 1.0;
};

namespace serial {

/// out[j] = 1 when any shape fails M > margin, C >= 0, or the domain y > 1
/// (k > 0 only) at y = y0 + j * step.
void condition_flags(std::span<const CurveShape> shapes, double y0, double step, double margin,
                     std::span<std::uint8_t> out);

/// out[n] = -delta n + k ln p_r(delta n + offset)
void log_curve_values(CurveShape shape, double offset, double delta, std::span<double> out);

/// out[n] = ln(g(n) - g(n+1)); log_g has out.size() + 1 entries.
void log_weights_from_tail(std::span<const double> log_g, std::span<double> out);

/// out[i] = a[i] - b[i]
void log_ratio(std::span<const double> a, std::span<const double> b, std::span<double> out);

}  // namespace serial

namespace parallel {

void condition_flags(std::span<const CurveShape> shapes, double y0, double step, double margin,
                     std::span<std::uint8_t> out);
void log_curve_values(CurveShape shape, double offset, double delta, std::span<double> out);
void log_weights_from_tail(std::span<const double> log_g, std::span<double> out);
void log_ratio(std::span<const double> a, std::span<const double> b, std::span<double> out);

}  // namespace parallel

}  // namespace entorder::kernels
