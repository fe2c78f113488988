#include "bnladder/format.hpp"

#include <array>
#include <cstdio>

namespace bnladder {

std::string format_double(double x) {
  std::array<char, 40> buf{};
  const int n = std::snprintf(buf.data(), buf.size(), "%.17g", x);
  return std::string(buf.data(), static_cast<std::size_t>(n));
}

}  // namespace bnladder
