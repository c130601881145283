#pragma once

#include <charconv>
#include <cmath>
#include <optional>
#include <string>

namespace hgd {

// Shortest round-trip text for a double; non-finite values become "nan".
inline std::string fmt_num(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Empty for missing or non-finite values.
inline std::string fmt_opt(std::optional<double> v) {
  return v && std::isfinite(*v) ? fmt_num(*v) : std::string();
}

}  // namespace hgd
