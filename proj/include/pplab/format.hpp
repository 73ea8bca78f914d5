#pragma once

#include <string>
#include <string_view>

namespace pplab {

// Shortest decimal that reads back to the same double; "inf", "-inf", "nan".
std::string format_real(double x);
// Strict parse of a full string; throws std::invalid_argument.
double parse_real(std::string_view s);
long long parse_integer(std::string_view s);

}  // namespace pplab
