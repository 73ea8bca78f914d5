#include "pplab/format.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pplab {

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_real(std::string_view s) {
  if (s == "inf" || s == "+inf" || s == "infinity") return HUGE_VAL;
  if (s == "-inf") return -HUGE_VAL;
  if (s.empty()) throw std::invalid_argument("expected a number, got an empty string");
  const char* first = s.data();
  if (*first == '+') ++first;
  double value = 0.0;
  auto res = std::from_chars(first, s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  return value;
}

long long parse_integer(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("expected an integer, got an empty string");
  long long value = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  return value;
}

}  // namespace pplab
