#include "mythforge/normalize.hpp"

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <cctype>
#include <charconv>
#include <cstdio>
#include <regex>
#include <stdexcept>

#include "mythforge/error.hpp"
#include "mythforge/roman.hpp"
#include "mythforge/text.hpp"

namespace mythforge::normalize {

namespace {

const icu::Normalizer2& nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFC unavailable");
  return *n;
}

const icu::Normalizer2& nfd() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFDInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFD unavailable");
  return *n;
}

std::string to_nfc(std::string_view s) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
  icu::UnicodeString out = nfc().normalize(u, status);
  if (U_FAILURE(status)) return std::string(s);
  std::string utf8;
  out.toUTF8String(utf8);
  return utf8;
}

// ASCII rendering of a Latin-1 Supplement / Latin Extended-A letter; nullptr
// when the code point has no letter transliteration.
const char* transliterate(UChar32 cp) {
  switch (cp) {
    case 0x00C6: case 0x00E6: return "ae";
    case 0x00D0: case 0x00F0: return "d";
    case 0x00D8: case 0x00F8: return "o";
    case 0x00DE: case 0x00FE: return "th";
    case 0x00DF: return "ss";
    case 0x0110: case 0x0111: return "d";
    case 0x0126: case 0x0127: return "h";
    case 0x0131: return "i";
    case 0x0132: case 0x0133: return "ij";
    case 0x0138: return "k";
    case 0x013F: case 0x0140: case 0x0141: case 0x0142: return "l";
    case 0x0149: case 0x014A: case 0x014B: return "n";
    case 0x0152: case 0x0153: return "oe";
    case 0x0166: case 0x0167: return "t";
    case 0x017F: return "s";
    default: break;
  }
  if (cp < 0x00C0 || cp > 0x017F || cp == 0x00D7 || cp == 0x00F7) return nullptr;
  icu::UnicodeString decomposition;
  if (!nfd().getDecomposition(cp, decomposition) || decomposition.length() == 0)
    return nullptr;
  UChar base = decomposition.charAt(0);
  static thread_local char buf[2] = {0, 0};
  if (base < 0x80 && std::isalpha(base)) {
    buf[0] = static_cast<char>(std::tolower(base));
    return buf;
  }
  return nullptr;
}

bool is_combining_mark(UChar32 cp) { return cp >= 0x0300 && cp <= 0x036F; }

std::string format_year(long long year) {
  char buf[32];
  if (year < 0) std::snprintf(buf, sizeof buf, "-%04lld", -year);
  else std::snprintf(buf, sizeof buf, "%04lld", year);
  return buf;
}

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

std::string two(int v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d", v);
  return buf;
}

}  // namespace

std::string_view to_string(SpanKind k) {
  return k == SpanKind::secolo ? "secolo" : "anno";
}

double Coordinates::lat_value() const { return std::stod(lat); }
double Coordinates::lon_value() const { return std::stod(lon); }

Coordinates make_coordinates(std::string lat, std::string lon) {
  auto parse = [](const std::string& s) {
    double v = 0;
    auto t = text::trim(s);
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
      throw std::invalid_argument("not a decimal coordinate: '" + s + "'");
    return v;
  };
  double la = parse(lat), lo = parse(lon);
  if (la < -90 || la > 90 || lo < -180 || lo > 180)
    throw std::invalid_argument("coordinates out of range: " + lat + "," + lon);
  return Coordinates{std::string(text::trim(lat)), std::string(text::trim(lon))};
}

std::optional<Coordinates> parse_coordinates(std::string_view literal) {
  auto comma = literal.find(',');
  if (comma == std::string_view::npos) return std::nullopt;
  try {
    return make_coordinates(std::string(literal.substr(0, comma)),
                            std::string(literal.substr(comma + 1)));
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

std::optional<NameOrder> name_order_from_string(std::string_view s) {
  if (s == "surname-first") return NameOrder::surname_first;
  if (s == "given-first") return NameOrder::given_first;
  return std::nullopt;
}

std::string strip_serialization_noise(std::string_view raw) {
  auto s = text::trim(raw);
  if (s.size() < 3 || !s.starts_with("a:") || !std::isdigit(static_cast<unsigned char>(s[2])))
    return std::string(s);

  auto fail = [&](const std::string& why) -> NoiseError {
    return NoiseError("malformed serialized array (" + why + "): " + std::string(s));
  };
  std::size_t i = 2;
  auto read_int = [&]() {
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) throw fail("expected integer");
    return std::stoul(std::string(s.substr(start, i - start)));
  };
  auto expect = [&](std::string_view tok) {
    if (s.substr(i, tok.size()) != tok) throw fail("expected '" + std::string(tok) + "'");
    i += tok.size();
  };

  read_int();
  expect(":{");
  std::vector<std::string> payloads;
  while (true) {
    if (i >= s.size()) throw fail("unbalanced braces");
    if (s[i] == '}') {
      ++i;
      break;
    }
    expect("i:");
    read_int();
    expect(";s:");
    std::size_t len = read_int();
    expect(":\"");
    std::size_t start = i;
    std::size_t end;
    if (start + len + 1 < s.size() && s[start + len] == '"' &&
        s[start + len + 1] == ';') {
      end = start + len;
    } else {
      // Declared length disagrees with the payload: fall back to the closing
      // `";` delimiter.
      end = s.find("\";", start);
      if (end == std::string_view::npos) throw fail("unterminated string");
    }
    payloads.emplace_back(s.substr(start, end - start));
    i = end + 2;
  }
  if (i < s.size() && s[i] == ';') ++i;
  if (i != s.size()) throw fail("trailing characters");
  return text::join(payloads, "; ");
}

std::vector<std::string> split_values(std::string_view cleaned) {
  std::vector<std::string> out;
  for (auto& part : text::split(cleaned, ";")) {
    auto t = text::trim(part);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

ThemeRef split_theme(std::string_view raw) {
  auto s = text::trim(raw);
  if (s.empty()) throw EmptyField("theme is empty");
  auto colon = s.find(':');
  if (colon == std::string_view::npos) return {slugify(s), std::string(s)};
  auto left = text::trim(s.substr(0, colon));
  auto right = text::trim(s.substr(colon + 1));
  if (right.empty()) throw EmptyField("theme label is empty: " + std::string(s));
  return {slugify(left.empty() ? right : left), std::string(right)};
}

std::string slugify(std::string_view label) {
  std::string composed = to_nfc(text::trim(label));
  std::string out;
  bool pending_sep = false;
  auto emit = [&](std::string_view chunk) {
    if (pending_sep && !out.empty()) out += '-';
    pending_sep = false;
    out += chunk;
  };
  const auto* bytes = reinterpret_cast<const uint8_t*>(composed.data());
  int32_t length = static_cast<int32_t>(composed.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 cp;
    U8_NEXT(bytes, i, length, cp);
    if (cp < 0) {
      pending_sep = true;
      continue;
    }
    if (cp < 0x80) {
      if (std::isalnum(static_cast<int>(cp))) {
        char c = static_cast<char>(std::tolower(static_cast<int>(cp)));
        emit(std::string_view(&c, 1));
      } else {
        pending_sep = true;
      }
      continue;
    }
    if (is_combining_mark(cp)) continue;
    if (const char* t = transliterate(cp)) {
      emit(t);
    } else {
      pending_sep = true;
    }
  }
  if (out.empty()) throw EmptySlug("label yields an empty slug: '" + std::string(label) + "'");
  return out;
}

bool is_slug(std::string_view s) {
  static const std::regex re("[a-z0-9]+(-[a-z0-9]+)*");
  return std::regex_match(s.begin(), s.end(), re);
}

PersonRef normalize_person(std::string_view raw, NameOrder order) {
  std::string clean = text::collapse_spaces(raw);
  if (clean.empty()) throw EmptyField("person name is empty");
  PersonRef p{std::string(raw), clean, ""};

  // Already in "Surname, Given[, dates]" form.
  if (auto comma = clean.find(','); comma != std::string::npos) {
    auto parts = text::split(clean, ",");
    std::string surname(text::trim(parts[0]));
    std::string given(parts.size() > 1 ? text::trim(parts[1]) : "");
    p.slug = slugify(given.empty() ? surname : surname + " " + given);
    return p;
  }

  auto tokens = text::split(clean, " ");
  if (tokens.size() == 1) {
    p.slug = slugify(clean);
    return p;
  }
  std::string surname, given;
  if (order == NameOrder::surname_first) {
    surname = tokens.front();
    tokens.erase(tokens.begin());
  } else {
    surname = tokens.back();
    tokens.pop_back();
  }
  given = text::join(tokens, " ");
  p.display_label = surname + ", " + given;
  p.slug = slugify(surname + " " + given);
  return p;
}

PlaceRef split_location(std::string_view raw) {
  auto s = text::trim(raw);
  PlaceRef place;
  auto comma = s.rfind(',');
  if (comma == std::string_view::npos) {
    place.institution_label = std::string(s);
    return place;
  }
  place.institution_label = std::string(text::trim(s.substr(0, comma)));
  auto city = text::trim(s.substr(comma + 1));
  if (!city.empty()) place.city_label = std::string(city);
  return place;
}

TimeSpan parse_timespan(std::string_view raw) {
  std::string s = text::collapse_spaces(raw);
  static const std::regex century(R"(^([IVXLCDM]+) secolo( a\. ?C\.)?$)",
                                  std::regex::icase);
  static const std::regex range(R"(^(\d{1,4}) ?- ?(\d{1,4})$)");
  static const std::regex year(R"(^(\d{1,4})$)");
  std::smatch m;
  TimeSpan span;
  span.label = s;
  if (std::regex_match(s, m, century)) {
    std::string numeral = m[1].str();
    for (auto& c : numeral) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (!citeparse::is_roman(numeral)) throw TimeFormatError(std::string(raw));
    long long n = citeparse::roman_to_int(numeral);
    // Keeps every bound a four-digit xsd:date year.
    if (n > 100) throw TimeFormatError(std::string(raw));
    long long first, last;
    if (m[2].matched) {
      // Astronomical numbering: the Nth century BCE is -(100N-1) .. -100(N-1).
      first = -(100 * n - 1);
      last = -100 * (n - 1);
    } else {
      first = 100 * (n - 1);
      last = first + 99;
    }
    span.kind = SpanKind::secolo;
    span.begin = format_year(first) + "-01-01";
    span.end = format_year(last) + "-12-31";
    return span;
  }
  if (std::regex_match(s, m, range)) {
    long long a = std::stoll(m[1].str()), b = std::stoll(m[2].str());
    if (a > b) throw TimeFormatError(std::string(raw));
    span.begin = format_year(a) + "-01-01";
    span.end = format_year(b) + "-12-31";
    return span;
  }
  if (std::regex_match(s, m, year)) {
    long long y = std::stoll(m[1].str());
    span.begin = format_year(y) + "-01-01";
    span.end = format_year(y) + "-12-31";
    return span;
  }
  throw TimeFormatError(std::string(raw));
}

std::string parse_interpretation_datetime(std::string_view raw) {
  std::string s(text::trim(raw));
  static const std::regex re(R"(^(\d{2})/(\d{2})/(\d{4}) (\d{2}):(\d{2})$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw TimeFormatError(s);
  int day = std::stoi(m[1].str()), month = std::stoi(m[2].str());
  int year = std::stoi(m[3].str());
  int hour = std::stoi(m[4].str()), minute = std::stoi(m[5].str());
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month < 1 || month > 12) throw TimeFormatError(s);
  int max_day = kDays[month - 1] + (month == 2 && is_leap(year) ? 1 : 0);
  if (day < 1 || day > max_day || hour > 23 || minute > 59) throw TimeFormatError(s);
  return m[3].str() + "-" + two(month) + "-" + two(day) + "T" + two(hour) + ":" +
         two(minute) + ":00";
}

std::pair<std::optional<std::string>, std::string> split_epoch(std::string_view raw) {
  auto s = text::trim(raw);
  auto comma = s.rfind(',');
  if (comma == std::string_view::npos) return {std::nullopt, std::string(s)};
  auto epoch = text::trim(s.substr(0, comma));
  auto rest = text::trim(s.substr(comma + 1));
  if (epoch.empty()) return {std::nullopt, std::string(rest)};
  return {std::string(epoch), std::string(rest)};
}

}  // namespace mythforge::normalize
