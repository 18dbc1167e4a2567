#pragma once

// A restricted SPARQL SELECT subset: PREFIX, SELECT [DISTINCT], and basic
// graph patterns inside GRAPH blocks. No FILTER, OPTIONAL, UNION or
// solution modifiers.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mythforge/rdf.hpp"

namespace mythforge::query {

struct Variable {
  std::string name;

  friend bool operator==(const Variable&, const Variable&) = default;
};

using PatternTerm = std::variant<Variable, rdf::Iri, rdf::Literal>;

struct TriplePattern {
  PatternTerm s, p, o;

  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

struct GraphBlock {
  PatternTerm graph;  // Variable or Iri
  std::vector<TriplePattern> patterns;
};

struct Query {
  rdf::PrefixMap prefixes;
  std::vector<std::string> select_vars;
  bool distinct = false;
  std::vector<GraphBlock> blocks;
};

struct BindingTable {
  std::vector<std::string> columns;
  std::vector<std::vector<rdf::Term>> rows;
};

// Names of the graph variables invented for top-level patterns; they cannot
// collide with user variables.
bool is_internal_variable(std::string_view name);

// Throws QueryParseError or PrefixError.
Query parse_query(std::string_view text);

// Basic-graph-pattern semantics with multiset projection. Rows are sorted by
// the N-Triples form of each column in turn.
BindingTable evaluate(const Query& q, const rdf::Dataset& d);

// Sort rows as `evaluate` does.
void sort_rows(BindingTable& table);

}  // namespace mythforge::query
