#include "mythforge/roman.hpp"

#include <array>
#include <utility>

#include "mythforge/error.hpp"

namespace mythforge::citeparse {

namespace {
constexpr std::array<std::pair<int, const char*>, 13> kTable{{
    {1000, "M"}, {900, "CM"}, {500, "D"}, {400, "CD"}, {100, "C"}, {90, "XC"},
    {50, "L"}, {40, "XL"}, {10, "X"}, {9, "IX"}, {5, "V"}, {4, "IV"}, {1, "I"}}};

int digit_value(char c) {
  switch (c) {
    case 'I': return 1;
    case 'V': return 5;
    case 'X': return 10;
    case 'L': return 50;
    case 'C': return 100;
    case 'D': return 500;
    case 'M': return 1000;
    default: return 0;
  }
}
}  // namespace

std::string int_to_roman(int value) {
  if (value < 1 || value > 3999)
    throw RomanError("value out of range: " + std::to_string(value));
  std::string out;
  for (const auto& [v, sym] : kTable) {
    while (value >= v) {
      out += sym;
      value -= v;
    }
  }
  return out;
}

int roman_to_int(std::string_view s) {
  if (s.empty()) throw RomanError("empty numeral");
  int total = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    int v = digit_value(s[i]);
    if (!v) throw RomanError("invalid numeral '" + std::string(s) + "'");
    int next = i + 1 < s.size() ? digit_value(s[i + 1]) : 0;
    total += v < next ? -v : v;
  }
  // Canonical form check: only the standard spelling round-trips.
  if (total < 1 || total > 3999 || int_to_roman(total) != s)
    throw RomanError("non-canonical numeral '" + std::string(s) + "'");
  return total;
}

bool is_roman(std::string_view s) {
  try {
    roman_to_int(s);
    return true;
  } catch (const RomanError&) {
    return false;
  }
}

}  // namespace mythforge::citeparse
