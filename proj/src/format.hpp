#pragma once

#include <charconv>
#include <stdexcept>
#include <string>
#include <system_error>

namespace cournot::detail {

// Shortest round-trip decimal form; locale-independent and deterministic,
// so repeated runs emit byte-identical files.
inline std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

}  // namespace cournot::detail
