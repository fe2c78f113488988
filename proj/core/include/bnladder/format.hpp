#pragma once

#include <string>

namespace bnladder {

/// printf("%.17g"): 17 significant digits, '.' separator, round-trips exactly.
std::string format_double(double x);

}  // namespace bnladder
