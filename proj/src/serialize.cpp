#include "mythforge/serialize.hpp"

#include <algorithm>
#include <map>

#include "mythforge/error.hpp"
#include "mythforge/vocab.hpp"

namespace mythforge::rdf {

namespace {

void escape_into(std::string& out, std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
}

std::string turtle_term(const Term& t, const PrefixMap& prefixes) {
  if (const auto* iri = std::get_if<Iri>(&t)) return compress(*iri, prefixes);
  const auto& lit = std::get<Literal>(t);
  std::string out = "\"";
  escape_into(out, lit.lexical());
  out += '"';
  if (lit.langtag()) return out + "@" + *lit.langtag();
  return out + "^^" + compress(lit.datatype(), prefixes);
}

}  // namespace

std::string serialize_trig(const Dataset& dataset) {
  const PrefixMap& prefixes = dataset.prefixes();
  std::string out;
  for (const auto& [label, ns] : prefixes.bindings())
    out += "@prefix " + label + ": <" + ns.str() + "> .\n";

  const Iri type = vocab::rdf_type();
  // Quads are ordered graph-last, so regroup by graph, subject, predicate.
  std::map<Iri, std::map<Iri, std::map<Iri, std::vector<const Term*>>>> tree;
  for (const auto& q : dataset.quads()) tree[q.graph][q.subject][q.predicate].push_back(&q.object);

  for (const auto& [graph, subjects] : tree) {
    out += "\n" + compress(graph, prefixes) + " {\n";
    bool first_subject = true;
    for (const auto& [subject, predicates] : subjects) {
      if (!first_subject) out += "\n";
      first_subject = false;
      out += "  " + compress(subject, prefixes);
      // rdf:type first, printed as `a`.
      std::vector<std::pair<const Iri*, const std::vector<const Term*>*>> order;
      if (auto it = predicates.find(type); it != predicates.end())
        order.emplace_back(&it->first, &it->second);
      for (const auto& [p, objs] : predicates)
        if (p != type) order.emplace_back(&p, &objs);
      for (std::size_t i = 0; i < order.size(); ++i) {
        const auto& [p, objs] = order[i];
        out += i == 0 ? " " : "    ";
        out += *p == type ? std::string("a") : compress(*p, prefixes);
        for (std::size_t k = 0; k < objs->size(); ++k) {
          out += k == 0 ? " " : ", ";
          out += turtle_term(*(*objs)[k], prefixes);
        }
        out += i + 1 == order.size() ? " .\n" : " ;\n";
      }
    }
    out += "}\n";
  }
  return out;
}

std::string serialize_nquads(const Dataset& dataset) {
  std::vector<std::string> lines;
  lines.reserve(dataset.size());
  for (const auto& q : dataset.quads())
    lines.push_back(to_ntriples(q.subject) + " " + to_ntriples(q.predicate) + " " +
                    to_ntriples(q.object) + " " + to_ntriples(q.graph) + " .\n");
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) out += l;
  return out;
}

namespace {

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class LineParser {
 public:
  LineParser(std::string_view line, std::size_t number) : s_(line), line_(number) {}

  Quad parse() {
    skip_ws();
    Iri subject = subject_term();
    skip_ws();
    Iri predicate = iri_term();
    skip_ws();
    Term object = object_term();
    skip_ws();
    Iri graph(kDefaultGraph);
    if (peek() == '<') {
      graph = iri_term();
      skip_ws();
    } else if (peek() == '_') {
      fail("blank-node graph labels are not supported");
    }
    expect('.');
    skip_ws();
    if (!at_end() && peek() != '#') fail("trailing content after '.'");
    return Quad{std::move(subject), std::move(predicate), std::move(object), std::move(graph)};
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, msg); }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  void skip_ws() {
    while (!at_end() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Iri subject_term() {
    if (peek() == '_') fail("blank nodes are not supported");
    return iri_term();
  }

  char32_t hex(std::size_t digits) {
    if (pos_ + digits > s_.size()) fail("truncated unicode escape");
    char32_t v = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      char c = s_[pos_++];
      v <<= 4;
      if (c >= '0' && c <= '9') v |= c - '0';
      else if (c >= 'a' && c <= 'f') v |= c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') v |= c - 'A' + 10;
      else fail("bad hex digit in unicode escape");
    }
    return v;
  }

  std::string uchar() {
    // positioned after the backslash
    char c = peek();
    ++pos_;
    std::string out;
    if (c == 'u') append_utf8(out, hex(4));
    else if (c == 'U') append_utf8(out, hex(8));
    else fail("bad escape in IRI");
    return out;
  }

  Iri iri_term() {
    expect('<');
    std::string value;
    while (true) {
      if (at_end()) fail("unterminated IRI");
      char c = s_[pos_++];
      if (c == '>') break;
      if (c == '\\') value += uchar();
      else value += c;
    }
    try {
      return Iri(std::move(value));
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  Term object_term() {
    if (peek() == '<') return iri_term();
    if (peek() == '_') fail("blank nodes are not supported");
    if (peek() != '"') fail("expected IRI or literal");
    ++pos_;
    std::string lex;
    while (true) {
      if (at_end()) fail("unterminated literal");
      char c = s_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        lex += c;
        continue;
      }
      if (at_end()) fail("unterminated escape");
      char e = s_[pos_++];
      switch (e) {
        case 't': lex += '\t'; break;
        case 'b': lex += '\b'; break;
        case 'n': lex += '\n'; break;
        case 'r': lex += '\r'; break;
        case 'f': lex += '\f'; break;
        case '"': lex += '"'; break;
        case '\'': lex += '\''; break;
        case '\\': lex += '\\'; break;
        case 'u': append_utf8(lex, hex(4)); break;
        case 'U': append_utf8(lex, hex(8)); break;
        default: fail("bad escape in literal");
      }
    }
    try {
      if (peek() == '@') {
        ++pos_;
        std::size_t start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-'))
          ++pos_;
        if (pos_ == start) fail("empty language tag");
        return Literal::lang_string(std::move(lex), std::string(s_.substr(start, pos_ - start)));
      }
      if (peek() == '^') {
        ++pos_;
        expect('^');
        return Literal(std::move(lex), iri_term());
      }
      return Literal::string(std::move(lex));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  std::string_view s_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace

Dataset parse_nquads(std::string_view text) {
  Dataset out;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::size_t first = line.find_first_not_of(" \t");
    if (first != std::string_view::npos && line[first] != '#')
      out.insert(LineParser(line, number).parse());
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

}  // namespace mythforge::rdf
