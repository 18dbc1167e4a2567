#pragma once

#include <string>
#include <string_view>

namespace mythforge::citeparse {

// Canonical subtractive-notation numerals in 1..3999 (uppercase). Throws
// RomanError for anything else, including non-canonical forms like "IIII".
int roman_to_int(std::string_view s);
std::string int_to_roman(int value);
bool is_roman(std::string_view s);

}  // namespace mythforge::citeparse
