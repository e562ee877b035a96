#pragma once

#include <string>
#include <string_view>

namespace bp {

// Shortest decimal string that parses back to exactly `value`. All CSV
// output goes through this, which is what makes load -> serialize round
// trips byte-identical.
std::string format_double(double value);

// Fixed-precision rendering for display (--digits).
std::string format_double(double value, int digits);

// Strict full-string parse; throws DataError on anything else.
double parse_double(std::string_view text);

}  // namespace bp
