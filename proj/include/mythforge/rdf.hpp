#pragma once

// RDF term, quad, and dataset model shared by every pipeline stage.

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace mythforge::rdf {

// Absolute IRI. Construction validates the scheme, rejects whitespace and the
// characters `<>"{}|\^` plus backtick, and requires NFC-normalized UTF-8.
class Iri {
 public:
  explicit Iri(std::string value);

  const std::string& str() const noexcept { return value_; }

  friend bool operator==(const Iri&, const Iri&) = default;
  friend std::strong_ordering operator<=>(const Iri& a, const Iri& b) {
    return a.value_.compare(b.value_) <=> 0;
  }

 private:
  std::string value_;
};

bool is_valid_iri(std::string_view value);

class Literal {
 public:
  // Typed literal. date, dateTime and anyURI lexical forms are validated.
  Literal(std::string lexical, Iri datatype);
  // Language-tagged string (datatype rdf:langString).
  static Literal lang_string(std::string lexical, std::string langtag);
  static Literal string(std::string lexical);

  const std::string& lexical() const noexcept { return lexical_; }
  const Iri& datatype() const noexcept { return datatype_; }
  const std::optional<std::string>& langtag() const noexcept {
    return langtag_;
  }

  friend bool operator==(const Literal&, const Literal&) = default;
  friend std::strong_ordering operator<=>(const Literal& a, const Literal& b);

 private:
  Literal(std::string lexical, Iri datatype, std::optional<std::string> lang);

  std::string lexical_;
  Iri datatype_;
  std::optional<std::string> langtag_;
};

using Term = std::variant<Iri, Literal>;

inline bool is_iri(const Term& t) { return std::holds_alternative<Iri>(t); }
inline const Iri& as_iri(const Term& t) { return std::get<Iri>(t); }

struct Quad {
  Iri subject;
  Iri predicate;
  Term object;
  Iri graph;

  friend bool operator==(const Quad&, const Quad&) = default;
  friend std::strong_ordering operator<=>(const Quad& a, const Quad& b);
};

// Ordered prefix bindings. Insertion order is preserved because serializers
// print the prefix block in binding order.
class PrefixMap {
 public:
  // Throws PrefixError when `label` is already bound.
  void bind(std::string label, Iri ns);
  const std::vector<std::pair<std::string, Iri>>& bindings() const noexcept {
    return bindings_;
  }
  std::optional<Iri> namespace_of(std::string_view label) const;
  bool contains(std::string_view label) const {
    return namespace_of(label).has_value();
  }
  std::size_t size() const noexcept { return bindings_.size(); }

  // `label:local` -> absolute IRI. Throws PrefixError for unknown labels.
  Iri expand(std::string_view prefixed) const;

 private:
  std::vector<std::pair<std::string, Iri>> bindings_;
};

// The fifteen standard prefixes, in declaration order, with `myth` bound to
// `base`.
PrefixMap default_prefixes(const Iri& base);

enum class CompressStyle {
  // Local part restricted to Turtle-safe characters; output is parseable.
  strict,
  // Also allows `/` in the local part (`myth:item/284`); for display only.
  display,
};

// Longest-namespace prefixed name, or `<iri>` when no binding yields a valid
// local name.
std::string compress(const Iri& iri, const PrefixMap& prefixes,
                     CompressStyle style = CompressStyle::strict);

// Deterministic IRI minting: base + segments joined by `/`. Segments must be
// non-empty and consist of unreserved IRI characters (no `/`).
Iri mint_iri(const Iri& base, std::span<const std::string> segments);
Iri mint_iri(const Iri& base, std::initializer_list<std::string> segments);

class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(PrefixMap prefixes) : prefixes_(std::move(prefixes)) {}

  // Returns false when the quad was already present.
  bool insert(Quad quad);
  void insert_all(const std::vector<Quad>& quads);
  bool contains(const Quad& quad) const { return quads_.contains(quad); }
  std::size_t size() const noexcept { return quads_.size(); }
  bool empty() const noexcept { return quads_.empty(); }

  const std::set<Quad>& quads() const noexcept { return quads_; }
  // Each named graph exactly once, ascending.
  std::vector<Iri> graphs() const;
  std::vector<Quad> graph(const Iri& name) const;

  const PrefixMap& prefixes() const noexcept { return prefixes_; }
  PrefixMap& prefixes() noexcept { return prefixes_; }

  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.quads_ == b.quads_;
  }

 private:
  std::set<Quad> quads_;
  PrefixMap prefixes_;
};

// N-Triples rendering of a term (`<iri>`, `"lex"`, `"lex"@en`,
// `"lex"^^<dt>`); xsd:string literals are written without datatype.
std::string to_ntriples(const Term& term);

}  // namespace mythforge::rdf
