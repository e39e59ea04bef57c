#pragma once

#include <string>

namespace flrwkit {

/// Shortest decimal string that round-trips to the same double.
/// Locale independent; non-finite values print as "nan", "inf", "-inf".
std::string format_double(double v);

}  // namespace flrwkit
