#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace entorder {

/// Fixed 17-significant-digit rendering used by every on-disk and report
/// format. Non-finite values render as inf, -inf, nan.
inline std::string format_g17(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace entorder
