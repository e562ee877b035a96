#include "bp/format.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "bp/errors.hpp"

namespace bp {

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string format_double(double value, int digits) {
  if (digits < 0) digits = 0;
  if (digits > 17) digits = 17;
  char buffer[64];
  const int written = std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
  return std::string(buffer, static_cast<std::size_t>(written));
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc{} || result.ptr != end || text.empty()) {
    throw DataError("not a number: '" + std::string(text) + "'");
  }
  if (!std::isfinite(value)) {
    throw DataError("non-finite number: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace bp
