#pragma once

// Cleaning and standardization of raw cell values.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mythforge::normalize {

enum class SpanKind { secolo, anno };

std::string_view to_string(SpanKind k);

struct TimeSpan {
  std::string label;
  SpanKind kind = SpanKind::anno;
  std::string begin;  // xsd:date lexical form
  std::string end;

  friend bool operator==(const TimeSpan&, const TimeSpan&) = default;
};

struct Coordinates {
  // Kept verbatim as received so they are re-emitted bit-for-bit.
  std::string lat;
  std::string lon;

  double lat_value() const;
  double lon_value() const;
  std::string to_literal() const { return lat + "," + lon; }

  friend bool operator==(const Coordinates&, const Coordinates&) = default;
};

// Throws std::invalid_argument when out of range or not numeric.
Coordinates make_coordinates(std::string lat, std::string lon);
// Parses `"lat,lon"`.
std::optional<Coordinates> parse_coordinates(std::string_view literal);

struct PlaceRef {
  std::string institution_label;
  std::optional<std::string> city_label;
  std::optional<std::string> country_label;
  std::optional<Coordinates> coordinates;
};

struct PersonRef {
  std::string raw;
  std::string display_label;
  std::string slug;
};

struct ThemeRef {
  std::string slug;
  std::string label;

  friend bool operator==(const ThemeRef&, const ThemeRef&) = default;
};

enum class NameOrder { surname_first, given_first };

std::optional<NameOrder> name_order_from_string(std::string_view s);

// `a:N:{i:K;s:LEN:"...";...}` -> payloads joined by "; "; anything else is
// returned trimmed. Throws NoiseError for malformed serialized arrays.
std::string strip_serialization_noise(std::string_view raw);

// Splits a cleaned multi-value cell ("Mosaico; Affresco") into its values.
std::vector<std::string> split_values(std::string_view cleaned);

ThemeRef split_theme(std::string_view raw);

// Lowercase ASCII slug; Latin-1 and Latin Extended-A letters are
// transliterated, other characters act as separators. Throws EmptySlug.
std::string slugify(std::string_view label);
bool is_slug(std::string_view s);

PersonRef normalize_person(std::string_view raw, NameOrder order);

PlaceRef split_location(std::string_view raw);

// "XVII secolo", "V secolo a.C.", "1624-1663", "1977". Throws
// TimeFormatError.
TimeSpan parse_timespan(std::string_view raw);

// "DD/MM/YYYY HH:MM" -> "YYYY-MM-DDTHH:MM:00". Throws TimeFormatError.
std::string parse_interpretation_datetime(std::string_view raw);

// Optional "<epoch>, <century>" form of the century cell ("Arte
// contemporanea, XX secolo"). Returns {epoch, century}.
std::pair<std::optional<std::string>, std::string> split_epoch(std::string_view raw);

}  // namespace mythforge::normalize
