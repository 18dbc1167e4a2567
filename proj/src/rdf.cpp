#include "mythforge/rdf.hpp"

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include <algorithm>
#include <cctype>

#include "mythforge/error.hpp"
#include "mythforge/vocab.hpp"

namespace mythforge::rdf {

namespace {

bool is_ascii(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return static_cast<unsigned char>(c) < 0x80; });
}

bool is_nfc(std::string_view s) {
  if (is_ascii(s)) return true;
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) return false;
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
  std::string back;
  u.toUTF8String(back);
  if (back != s) return false;  // invalid UTF-8 does not survive the round-trip
  const bool ok = nfc->isNormalized(u, status);
  return U_SUCCESS(status) && ok;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), is_digit);
}

int to_int(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

bool is_leap(long long year) {
  // Proleptic Gregorian, astronomical numbering (year 0 is a leap year).
  return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

bool valid_timezone(std::string_view tz) {
  if (tz.empty() || tz == "Z") return true;
  if (tz.size() != 6 || (tz[0] != '+' && tz[0] != '-') || tz[3] != ':')
    return false;
  if (!all_digits(tz.substr(1, 2)) || !all_digits(tz.substr(4, 2))) return false;
  return to_int(tz.substr(1, 2)) <= 14 && to_int(tz.substr(4, 2)) <= 59;
}

// Parses `-?YYYY-MM-DD`; returns the number of characters consumed, 0 on
// failure.
std::size_t parse_date_part(std::string_view s) {
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && s[i] == '-') {
    negative = true;
    ++i;
  }
  std::size_t year_start = i;
  while (i < s.size() && is_digit(s[i])) ++i;
  std::size_t year_len = i - year_start;
  if (year_len < 4) return 0;
  if (year_len > 4 && s[year_start] == '0') return 0;
  if (i + 6 > s.size() || s[i] != '-' || s[i + 3] != '-') return 0;
  auto month = s.substr(i + 1, 2);
  auto day = s.substr(i + 4, 2);
  if (!all_digits(month) || !all_digits(day)) return 0;
  long long year = std::stoll(std::string(s.substr(year_start, year_len)));
  if (negative) year = -year;
  int m = to_int(month);
  int d = to_int(day);
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m < 1 || m > 12) return 0;
  int max_day = kDays[m - 1] + (m == 2 && is_leap(year) ? 1 : 0);
  if (d < 1 || d > max_day) return 0;
  return i + 6;
}

bool valid_date(std::string_view s) {
  std::size_t n = parse_date_part(s);
  return n != 0 && valid_timezone(s.substr(n));
}

bool valid_date_time(std::string_view s) {
  std::size_t n = parse_date_part(s);
  if (n == 0 || n >= s.size() || s[n] != 'T') return false;
  auto rest = s.substr(n + 1);
  if (rest.size() < 8 || rest[2] != ':' || rest[5] != ':') return false;
  auto hh = rest.substr(0, 2), mm = rest.substr(3, 2), ss = rest.substr(6, 2);
  if (!all_digits(hh) || !all_digits(mm) || !all_digits(ss)) return false;
  if (to_int(hh) > 24 || to_int(mm) > 59 || to_int(ss) > 59) return false;
  if (to_int(hh) == 24 && (to_int(mm) != 0 || to_int(ss) != 0)) return false;
  std::size_t i = 8;
  if (i < rest.size() && rest[i] == '.') {
    std::size_t start = ++i;
    while (i < rest.size() && is_digit(rest[i])) ++i;
    if (i == start) return false;
  }
  return valid_timezone(rest.substr(i));
}

bool valid_any_uri(std::string_view s) {
  return std::none_of(s.begin(), s.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return u <= 0x20 || u == 0x7f || c == '<' || c == '>' || c == '"';
  });
}

bool is_local_start(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || u >= 0x80;
}

bool is_local_char(char c, CompressStyle style) {
  auto u = static_cast<unsigned char>(c);
  if (std::isalnum(u) || c == '_' || c == '-' || c == '.' || u >= 0x80)
    return true;
  return style == CompressStyle::display && c == '/';
}

bool valid_local_name(std::string_view local, CompressStyle style) {
  if (local.empty()) return true;
  if (!is_local_start(local.front())) return false;
  if (local.back() == '.') return false;
  return std::all_of(local.begin(), local.end(),
                     [style](char c) { return is_local_char(c, style); });
}

bool is_unreserved(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '-' || c == '.' || c == '_' || c == '~';
}

void append_escaped(std::string& out, std::string_view lexical) {
  for (char c : lexical) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
}

}  // namespace

bool is_valid_iri(std::string_view value) {
  auto colon = value.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  if (!std::isalpha(static_cast<unsigned char>(value[0]))) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    char c = value[i];
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' &&
        c != '.')
      return false;
  }
  for (char c : value) {
    auto u = static_cast<unsigned char>(c);
    if (u <= 0x20 || u == 0x7f) return false;
    switch (c) {
      case '<': case '>': case '"': case '{': case '}': case '|':
      case '\\': case '^': case '`':
        return false;
      default: break;
    }
  }
  return is_nfc(value);
}

Iri::Iri(std::string value) : value_(std::move(value)) {
  if (!is_valid_iri(value_)) throw IriError("invalid IRI: <" + value_ + ">");
}

Literal::Literal(std::string lexical, Iri datatype)
    : Literal(std::move(lexical), std::move(datatype), std::nullopt) {}

Literal::Literal(std::string lexical, Iri datatype,
                 std::optional<std::string> lang)
    : lexical_(std::move(lexical)),
      datatype_(std::move(datatype)),
      langtag_(std::move(lang)) {
  const bool is_lang = datatype_ == vocab::rdf_lang_string();
  if (is_lang != langtag_.has_value())
    throw LiteralError("language tag requires rdf:langString and vice versa");
  if (langtag_) {
    const auto& tag = *langtag_;
    bool ok = !tag.empty() && std::isalpha(static_cast<unsigned char>(tag[0]));
    for (char c : tag)
      ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '-');
    if (!ok) throw LiteralError("invalid language tag '" + tag + "'");
  }
  const std::string& dt = datatype_.str();
  bool valid = true;
  if (dt == vocab::xsd_date().str()) valid = valid_date(lexical_);
  else if (dt == vocab::xsd_date_time().str()) valid = valid_date_time(lexical_);
  else if (dt == vocab::xsd_any_uri().str()) valid = valid_any_uri(lexical_);
  if (!valid)
    throw LiteralError("invalid lexical form '" + lexical_ + "' for <" + dt + ">");
}

Literal Literal::lang_string(std::string lexical, std::string langtag) {
  return Literal(std::move(lexical), vocab::rdf_lang_string(),
                 std::move(langtag));
}

Literal Literal::string(std::string lexical) {
  return Literal(std::move(lexical), vocab::xsd_string());
}

std::strong_ordering operator<=>(const Literal& a, const Literal& b) {
  if (auto c = a.lexical_.compare(b.lexical_) <=> 0; c != 0) return c;
  if (auto c = a.datatype_ <=> b.datatype_; c != 0) return c;
  return a.langtag_.value_or("").compare(b.langtag_.value_or("")) <=> 0;
}

std::strong_ordering operator<=>(const Quad& a, const Quad& b) {
  if (auto c = a.subject <=> b.subject; c != 0) return c;
  if (auto c = a.predicate <=> b.predicate; c != 0) return c;
  if (auto c = a.object <=> b.object; c != 0) return c;
  return a.graph <=> b.graph;
}

void PrefixMap::bind(std::string label, Iri ns) {
  if (contains(label)) throw PrefixError("prefix '" + label + "' already bound");
  bindings_.emplace_back(std::move(label), std::move(ns));
}

std::optional<Iri> PrefixMap::namespace_of(std::string_view label) const {
  for (const auto& [l, ns] : bindings_)
    if (l == label) return ns;
  return std::nullopt;
}

Iri PrefixMap::expand(std::string_view prefixed) const {
  auto colon = prefixed.find(':');
  if (colon == std::string_view::npos)
    throw PrefixError("not a prefixed name: '" + std::string(prefixed) + "'");
  auto ns = namespace_of(prefixed.substr(0, colon));
  if (!ns)
    throw PrefixError("unknown prefix '" + std::string(prefixed.substr(0, colon)) +
                      "'");
  return Iri(ns->str() + std::string(prefixed.substr(colon + 1)));
}

PrefixMap default_prefixes(const Iri& base) {
  PrefixMap p;
  p.bind("dct", Iri(vocab::kDct));
  p.bind("ecrm", Iri(vocab::kEcrm));
  p.bind("efrbroo", Iri(vocab::kEfrbroo));
  p.bind("crm", Iri(vocab::kCrm));
  p.bind("hico", Iri(vocab::kHico));
  p.bind("hucit", Iri(vocab::kHucit));
  p.bind("myth", base);
  p.bind("np", Iri(vocab::kNp));
  p.bind("owl", Iri(vocab::kOwl));
  p.bind("prov", Iri(vocab::kProv));
  p.bind("rdfs", Iri(vocab::kRdfs));
  p.bind("schema", Iri(vocab::kSchema));
  p.bind("xsd", Iri(vocab::kXsd));
  p.bind("co", Iri(vocab::kCo));
  p.bind("wdt", Iri(vocab::kWdt));
  return p;
}

std::string compress(const Iri& iri, const PrefixMap& prefixes,
                     CompressStyle style) {
  const std::string& s = iri.str();
  const std::pair<std::string, Iri>* best = nullptr;
  for (const auto& binding : prefixes.bindings()) {
    const std::string& ns = binding.second.str();
    if (s.size() < ns.size() || s.compare(0, ns.size(), ns) != 0) continue;
    if (!valid_local_name(std::string_view(s).substr(ns.size()), style)) continue;
    if (!best || ns.size() > best->second.str().size()) best = &binding;
  }
  if (!best) return "<" + s + ">";
  return best->first + ":" + s.substr(best->second.str().size());
}

Iri mint_iri(const Iri& base, std::span<const std::string> segments) {
  if (base.str().empty() || base.str().back() != '/')
    throw InvalidSegment("base IRI must end with '/': <" + base.str() + ">");
  if (segments.empty()) throw InvalidSegment("empty path");
  std::string out = base.str();
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const std::string& seg = segments[i];
    if (seg.empty()) throw InvalidSegment("empty path segment");
    if (seg == "." || seg == ".." ||
        !std::all_of(seg.begin(), seg.end(), is_unreserved))
      throw InvalidSegment("invalid path segment '" + seg + "'");
    if (i) out += '/';
    out += seg;
  }
  return Iri(std::move(out));
}

Iri mint_iri(const Iri& base, std::initializer_list<std::string> segments) {
  return mint_iri(base, std::span<const std::string>(segments.begin(),
                                                     segments.size()));
}

bool Dataset::insert(Quad quad) { return quads_.insert(std::move(quad)).second; }

void Dataset::insert_all(const std::vector<Quad>& quads) {
  for (const auto& q : quads) quads_.insert(q);
}

std::vector<Iri> Dataset::graphs() const {
  std::set<Iri> names;
  for (const auto& q : quads_) names.insert(q.graph);
  return {names.begin(), names.end()};
}

std::vector<Quad> Dataset::graph(const Iri& name) const {
  std::vector<Quad> out;
  for (const auto& q : quads_)
    if (q.graph == name) out.push_back(q);
  return out;
}

std::string to_ntriples(const Term& term) {
  if (const auto* iri = std::get_if<Iri>(&term)) return "<" + iri->str() + ">";
  const auto& lit = std::get<Literal>(term);
  std::string out = "\"";
  append_escaped(out, lit.lexical());
  out += '"';
  if (lit.langtag()) {
    out += "@" + *lit.langtag();
  } else if (lit.datatype() != vocab::xsd_string()) {
    out += "^^<" + lit.datatype().str() + ">";
  }
  return out;
}

}  // namespace mythforge::rdf
