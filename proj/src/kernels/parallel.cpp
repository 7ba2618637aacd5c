#include <cstdint>

#include "entorder/kernels.hpp"
#include "pointwise.hpp"

namespace entorder::kernels::parallel {

namespace {
// Below this many points the thread fork costs more than the loop.
constexpr std::int64_t kMinParallel = 4096;
}  // namespace

void condition_flags(std::span<const CurveShape> shapes, double y0, double step, double margin,
                     std::span<std::uint8_t> out) {
  const auto count = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static) if (count >= kMinParallel)
  for (std::int64_t j = 0; j < count; ++j)
    out[j] = detail::point_fails(shapes, y0 + static_cast<double>(j) * step, margin) ? 1 : 0;
}

void log_curve_values(CurveShape shape, double offset, double delta, std::span<double> out) {
  const auto count = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static) if (count >= kMinParallel)
  for (std::int64_t n = 0; n < count; ++n)
    out[n] = detail::log_curve_at(shape, offset, delta, static_cast<std::size_t>(n));
}

void log_weights_from_tail(std::span<const double> log_g, std::span<double> out) {
  const auto count = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static) if (count >= kMinParallel)
  for (std::int64_t n = 0; n < count; ++n)
    out[n] = detail::log_weight_at(log_g, static_cast<std::size_t>(n));
}

void log_ratio(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  const auto count = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static) if (count >= kMinParallel)
  for (std::int64_t i = 0; i < count; ++i) out[i] = a[i] - b[i];
}

}  // namespace entorder::kernels::parallel
