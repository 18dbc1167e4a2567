#include "mythforge/query.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>

#include "mythforge/error.hpp"
#include "mythforge/vocab.hpp"

namespace mythforge::query {

namespace {

constexpr std::string_view kInternalPrefix = " g";

enum class Tok { iri, pname, var, string, langtag, dtype, integer, punct, word, end };

struct Token {
  Tok kind;
  std::string text;   // IRI body, var name, string value, punctuation, word
  std::string extra;  // pname local part
  std::size_t pos;
};

bool is_pn_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         static_cast<unsigned char>(c) >= 0x80;
}

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip();
      if (i_ >= s_.size()) {
        out.push_back({Tok::end, "", "", i_});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  [[noreturn]] void fail(std::vector<std::string> expected) const {
    std::string found = i_ < s_.size() ? std::string(1, s_[i_]) : "end of input";
    throw QueryParseError(i_, std::move(expected), found);
  }

  void skip() {
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i_;
      } else if (c == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }

  Token next() {
    std::size_t start = i_;
    char c = s_[i_];
    if (c == '<') {
      std::size_t close = s_.find('>', i_);
      std::size_t ws = s_.find_first_of(" \t\r\n", i_);
      if (close == std::string_view::npos || (ws != std::string_view::npos && ws < close))
        fail({"IRI"});
      i_ = close + 1;
      return {Tok::iri, std::string(s_.substr(start + 1, close - start - 1)), "", start};
    }
    if (c == '?' || c == '$') {
      ++i_;
      std::size_t b = i_;
      while (i_ < s_.size() && is_pn_char(s_[i_])) ++i_;
      if (i_ == b) fail({"variable name"});
      return {Tok::var, std::string(s_.substr(b, i_ - b)), "", start};
    }
    if (c == '"' || c == '\'') return string_token(c);
    if (c == '@') {
      ++i_;
      std::size_t b = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '-')) ++i_;
      if (i_ == b) fail({"language tag"});
      return {Tok::langtag, std::string(s_.substr(b, i_ - b)), "", start};
    }
    if (c == '^') {
      if (i_ + 1 < s_.size() && s_[i_ + 1] == '^') {
        i_ += 2;
        return {Tok::dtype, "^^", "", start};
      }
      fail({"^^"});
    }
    if (std::string_view("{}.;,()*").find(c) != std::string_view::npos) {
      ++i_;
      return {Tok::punct, std::string(1, c), "", start};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || ((c == '-' || c == '+') && i_ + 1 < s_.size() &&
                                                         std::isdigit(static_cast<unsigned char>(s_[i_ + 1])))) {
      ++i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return {Tok::integer, std::string(s_.substr(start, i_ - start)), "", start};
    }
    if (is_pn_char(c) || c == ':') {
      std::size_t b = i_;
      while (i_ < s_.size() && (is_pn_char(s_[i_]) || s_[i_] == '.')) ++i_;
      // A trailing '.' ends the statement, not the name.
      while (i_ > b && s_[i_ - 1] == '.') --i_;
      if (i_ < s_.size() && s_[i_] == ':') {
        std::string prefix(s_.substr(b, i_ - b));
        ++i_;
        std::size_t lb = i_;
        while (i_ < s_.size() && (is_pn_char(s_[i_]) || s_[i_] == '.' || s_[i_] == ':' || s_[i_] == '%'))
          ++i_;
        while (i_ > lb && s_[i_ - 1] == '.') --i_;
        return {Tok::pname, prefix, std::string(s_.substr(lb, i_ - lb)), start};
      }
      if (i_ == b) fail({"name"});
      return {Tok::word, std::string(s_.substr(b, i_ - b)), "", start};
    }
    fail({"IRI", "prefixed name", "variable", "literal", "punctuation"});
  }

  Token string_token(char quote) {
    std::size_t start = i_++;
    std::string value;
    while (true) {
      if (i_ >= s_.size() || s_[i_] == '\n') fail({std::string(1, quote)});
      char c = s_[i_++];
      if (c == quote) break;
      if (c != '\\') {
        value += c;
        continue;
      }
      if (i_ >= s_.size()) fail({"escape"});
      char e = s_[i_++];
      switch (e) {
        case 'n': value += '\n'; break;
        case 'r': value += '\r'; break;
        case 't': value += '\t'; break;
        case '"': value += '"'; break;
        case '\'': value += '\''; break;
        case '\\': value += '\\'; break;
        default: --i_; fail({"escape"});
      }
    }
    return {Tok::string, value, "", start};
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(Lexer(text).run()) {}

  Query parse() {
    Query q;
    while (is_word("PREFIX")) {
      ++k_;
      const Token& ns = cur();
      if (ns.kind != Tok::pname || !ns.extra.empty()) fail({"prefix label"});
      ++k_;
      const Token& iri = cur();
      if (iri.kind != Tok::iri) fail({"IRI"});
      ++k_;
      q.prefixes.bind(ns.text, make_iri(iri));
    }
    if (!is_word("SELECT")) fail({"PREFIX", "SELECT"});
    ++k_;
    if (is_word("DISTINCT")) {
      q.distinct = true;
      ++k_;
    }
    std::vector<std::size_t> var_pos;
    while (cur().kind == Tok::var) {
      q.select_vars.push_back(cur().text);
      var_pos.push_back(cur().pos);
      ++k_;
    }
    if (q.select_vars.empty()) fail({"variable"});
    if (is_word("WHERE")) ++k_;
    expect_punct("{");
    prefixes_ = &q.prefixes;

    std::optional<std::size_t> top_block;
    while (!is_punct("}")) {
      if (is_word("GRAPH")) {
        ++k_;
        GraphBlock block;
        block.graph = var_or_iri();
        expect_punct("{");
        block.patterns = triples();
        expect_punct("}");
        q.blocks.push_back(std::move(block));
        if (is_punct(".")) ++k_;
      } else if (starts_term()) {
        auto patterns = triples();
        if (!top_block) {
          top_block = q.blocks.size();
          q.blocks.push_back({Variable{std::string(kInternalPrefix) + "0"}, {}});
        }
        auto& dst = q.blocks[*top_block].patterns;
        dst.insert(dst.end(), patterns.begin(), patterns.end());
      } else {
        fail({"GRAPH", "triple pattern", "}"});
      }
    }
    ++k_;
    if (cur().kind != Tok::end) fail({"end of query"});

    std::set<std::string> used;
    auto note = [&](const PatternTerm& t) {
      if (auto* v = std::get_if<Variable>(&t)) used.insert(v->name);
    };
    for (const auto& b : q.blocks) {
      note(b.graph);
      for (const auto& p : b.patterns) {
        note(p.s);
        note(p.p);
        note(p.o);
      }
    }
    for (std::size_t i = 0; i < q.select_vars.size(); ++i)
      if (!used.contains(q.select_vars[i]))
        throw QueryParseError(var_pos[i], {"variable used in the pattern"}, "?" + q.select_vars[i]);
    return q;
  }

 private:
  const Token& cur() const { return toks_[k_]; }
  bool is_word(std::string_view w) const { return cur().kind == Tok::word && upper(cur().text) == w; }
  bool is_punct(std::string_view p) const { return cur().kind == Tok::punct && cur().text == p; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = cur();
    std::string found;
    switch (t.kind) {
      case Tok::end: found = "end of input"; break;
      case Tok::var: found = "?" + t.text; break;
      case Tok::iri: found = "<" + t.text + ">"; break;
      case Tok::pname: found = t.text + ":" + t.extra; break;
      case Tok::string: found = "\"" + t.text + "\""; break;
      default: found = t.text;
    }
    throw QueryParseError(t.pos, std::move(expected), found);
  }

  void expect_punct(std::string_view p) {
    if (!is_punct(p)) fail({std::string(p)});
    ++k_;
  }

  rdf::Iri make_iri(const Token& t) const {
    try {
      return rdf::Iri(t.text);
    } catch (const Error&) {
      fail({"valid IRI"});
    }
  }

  rdf::Iri iri_like() {
    const Token& t = cur();
    if (t.kind == Tok::iri) {
      ++k_;
      return make_iri(t);
    }
    if (t.kind == Tok::pname) {
      ++k_;
      return prefixes_->expand(t.text + ":" + t.extra);
    }
    fail({"IRI", "prefixed name"});
  }

  bool starts_term() const {
    auto k = cur().kind;
    return k == Tok::var || k == Tok::iri || k == Tok::pname || k == Tok::string || k == Tok::integer;
  }

  PatternTerm var_or_iri() {
    if (cur().kind == Tok::var) return Variable{toks_[k_++].text};
    if (cur().kind == Tok::iri || cur().kind == Tok::pname) return iri_like();
    fail({"variable", "IRI", "prefixed name"});
  }

  PatternTerm term() {
    const Token& t = cur();
    switch (t.kind) {
      case Tok::var: ++k_; return Variable{t.text};
      case Tok::iri:
      case Tok::pname: return iri_like();
      case Tok::integer:
        ++k_;
        return rdf::Literal(t.text, vocab::xsd_integer());
      case Tok::string: {
        ++k_;
        try {
          if (cur().kind == Tok::langtag) return rdf::Literal::lang_string(t.text, toks_[k_++].text);
          if (cur().kind == Tok::dtype) {
            ++k_;
            return rdf::Literal(t.text, iri_like());
          }
          return rdf::Literal::string(t.text);
        } catch (const QueryParseError&) {
          throw;
        } catch (const PrefixError&) {
          throw;
        } catch (const Error& e) {
          throw QueryParseError(t.pos, {"valid literal"}, e.what());
        }
      }
      default: fail({"variable", "IRI", "prefixed name", "literal"});
    }
  }

  PatternTerm verb() {
    if (cur().kind == Tok::word && cur().text == "a") {
      ++k_;
      return vocab::rdf_type();
    }
    if (cur().kind == Tok::var || cur().kind == Tok::iri || cur().kind == Tok::pname) return var_or_iri();
    fail({"a", "variable", "IRI", "prefixed name"});
  }

  std::vector<TriplePattern> triples() {
    std::vector<TriplePattern> out;
    if (!starts_term()) fail({"triple pattern"});
    while (starts_term()) {
      PatternTerm s = term();
      while (true) {
        PatternTerm p = verb();
        while (true) {
          out.push_back({s, p, term()});
          if (!is_punct(",")) break;
          ++k_;
        }
        if (!is_punct(";")) break;
        ++k_;
        // A dangling ';' before '.' or '}' is allowed.
        if (is_punct(".") || is_punct("}")) break;
      }
      if (!is_punct(".")) break;
      ++k_;
    }
    return out;
  }

  std::vector<Token> toks_;
  std::size_t k_ = 0;
  const rdf::PrefixMap* prefixes_ = nullptr;
};

// ---- evaluation ----

using Row = std::vector<std::optional<rdf::Term>>;

struct Slot {
  bool is_var = false;
  std::size_t var = 0;
  std::optional<rdf::Term> constant;
};

struct Atom {
  std::array<Slot, 4> slots;  // s p o g
  std::vector<std::size_t> vars;  // distinct variables, first-occurrence order
  // candidate bindings for `vars`
  std::vector<std::vector<rdf::Term>> candidates;
};

rdf::Term quad_term(const rdf::Quad& q, std::size_t i) {
  switch (i) {
    case 0: return q.subject;
    case 1: return q.predicate;
    case 2: return q.object;
    default: return q.graph;
  }
}

std::string key_of(const std::vector<const rdf::Term*>& terms) {
  std::string k;
  for (const auto* t : terms) {
    k += rdf::to_ntriples(*t);
    k += '\x1f';
  }
  return k;
}

}  // namespace

bool is_internal_variable(std::string_view name) { return name.starts_with(kInternalPrefix); }

Query parse_query(std::string_view text) { return Parser(text).parse(); }

void sort_rows(BindingTable& table) {
  std::vector<std::pair<std::vector<std::string>, std::size_t>> keys;
  keys.reserve(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    std::vector<std::string> k;
    for (const auto& t : table.rows[i]) k.push_back(rdf::to_ntriples(t));
    keys.emplace_back(std::move(k), i);
  }
  std::sort(keys.begin(), keys.end());
  std::vector<std::vector<rdf::Term>> rows;
  rows.reserve(keys.size());
  for (const auto& [k, i] : keys) rows.push_back(std::move(table.rows[i]));
  table.rows = std::move(rows);
}

BindingTable evaluate(const Query& q, const rdf::Dataset& d) {
  std::map<std::string, std::size_t> var_ids;
  auto slot_of = [&](const PatternTerm& t) {
    Slot s;
    if (const auto* v = std::get_if<Variable>(&t)) {
      s.is_var = true;
      s.var = var_ids.try_emplace(v->name, var_ids.size()).first->second;
    } else if (const auto* i = std::get_if<rdf::Iri>(&t)) {
      s.constant = *i;
    } else {
      s.constant = std::get<rdf::Literal>(t);
    }
    return s;
  };

  std::vector<Atom> atoms;
  for (const auto& b : q.blocks) {
    for (const auto& p : b.patterns) {
      Atom a;
      a.slots = {slot_of(p.s), slot_of(p.p), slot_of(p.o), slot_of(b.graph)};
      for (const auto& s : a.slots)
        if (s.is_var && std::find(a.vars.begin(), a.vars.end(), s.var) == a.vars.end())
          a.vars.push_back(s.var);
      atoms.push_back(std::move(a));
    }
  }

  for (auto& a : atoms) {
    for (const auto& quad : d.quads()) {
      std::map<std::size_t, rdf::Term> bound;
      bool ok = true;
      for (std::size_t i = 0; i < 4 && ok; ++i) {
        const Slot& s = a.slots[i];
        rdf::Term t = quad_term(quad, i);
        if (!s.is_var) {
          ok = *s.constant == t;
        } else if (auto it = bound.find(s.var); it != bound.end()) {
          ok = it->second == t;
        } else {
          bound.emplace(s.var, std::move(t));
        }
      }
      if (!ok) continue;
      std::vector<rdf::Term> c;
      for (auto v : a.vars) c.push_back(bound.at(v));
      a.candidates.push_back(std::move(c));
    }
  }

  const std::size_t nvars = var_ids.size();
  std::vector<Row> rows{Row(nvars)};
  std::vector<bool> is_bound(nvars, false);
  std::vector<bool> used(atoms.size(), false);

  for (std::size_t step = 0; step < atoms.size() && !rows.empty(); ++step) {
    // Smallest candidate set first, preferring atoms connected to bound vars.
    std::optional<std::size_t> pick;
    bool pick_connected = false;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (used[i]) continue;
      bool connected = std::any_of(atoms[i].vars.begin(), atoms[i].vars.end(),
                                   [&](std::size_t v) { return is_bound[v]; });
      if (!pick || (connected && !pick_connected) ||
          (connected == pick_connected && atoms[i].candidates.size() < atoms[*pick].candidates.size())) {
        pick = i;
        pick_connected = connected;
      }
    }
    used[*pick] = true;
    const Atom& a = atoms[*pick];

    std::vector<std::size_t> shared_idx, fresh_idx;
    for (std::size_t k = 0; k < a.vars.size(); ++k)
      (is_bound[a.vars[k]] ? shared_idx : fresh_idx).push_back(k);

    std::unordered_map<std::string, std::vector<std::size_t>> table;
    for (std::size_t c = 0; c < a.candidates.size(); ++c) {
      std::vector<const rdf::Term*> key;
      for (auto k : shared_idx) key.push_back(&a.candidates[c][k]);
      table[key_of(key)].push_back(c);
    }

    std::vector<Row> next;
    for (const auto& row : rows) {
      std::vector<const rdf::Term*> key;
      for (auto k : shared_idx) key.push_back(&*row[a.vars[k]]);
      auto it = table.find(key_of(key));
      if (it == table.end()) continue;
      for (auto c : it->second) {
        Row r = row;
        for (auto k : fresh_idx) r[a.vars[k]] = a.candidates[c][k];
        next.push_back(std::move(r));
      }
    }
    rows = std::move(next);
    for (auto v : a.vars) is_bound[v] = true;
  }

  BindingTable out;
  out.columns = q.select_vars;
  std::vector<std::size_t> proj;
  for (const auto& v : q.select_vars) proj.push_back(var_ids.at(v));
  for (const auto& r : rows) {
    std::vector<rdf::Term> projected;
    for (auto id : proj) projected.push_back(*r[id]);
    out.rows.push_back(std::move(projected));
  }
  sort_rows(out);
  if (q.distinct) out.rows.erase(std::unique(out.rows.begin(), out.rows.end()), out.rows.end());
  return out;
}

}  // namespace mythforge::query
