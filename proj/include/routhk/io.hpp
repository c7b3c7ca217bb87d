#pragma once

#include <string>

namespace routhk {

/// Shortest decimal string that round-trips to the same double.
std::string format_shortest(double v);

/// Fixed 17 significant digits.
std::string format_17(double v);

}  // namespace routhk
