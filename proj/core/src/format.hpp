#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace mclab::detail {

/// Shortest round-trip decimal form; "inf", "-inf" and "nan" for non-finite values.
inline std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace mclab::detail
