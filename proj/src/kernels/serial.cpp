#include "entorder/kernels.hpp"
#include "pointwise.hpp"

namespace entorder::kernels::serial {

void condition_flags(std::span<const CurveShape> shapes, double y0, double step, double margin,
                     std::span<std::uint8_t> out) {
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = detail::point_fails(shapes, y0 + static_cast<double>(j) * step, margin) ? 1 : 0;
}

void log_curve_values(CurveShape shape, double offset, double delta, std::span<double> out) {
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = detail::log_curve_at(shape, offset, delta, n);
}

void log_weights_from_tail(std::span<const double> log_g, std::span<double> out) {
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = detail::log_weight_at(log_g, n);
}

void log_ratio(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
}

}  // namespace entorder::kernels::serial
