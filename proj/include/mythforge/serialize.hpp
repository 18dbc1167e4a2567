#pragma once

// TriG and N-Quads output, and a strict N-Quads reader.

#include <string>
#include <string_view>

#include "mythforge/rdf.hpp"

namespace mythforge::rdf {

// Graph that receives triples read without a graph label.
inline constexpr const char* kDefaultGraph = "urn:mythforge:default-graph";

// Prefix block in binding order, then graphs by IRI, subjects by IRI, with
// `;` / `,` grouping and the `a` shorthand. Byte-deterministic.
std::string serialize_trig(const Dataset& dataset);

// One quad per line, fully expanded, lines sorted.
std::string serialize_nquads(const Dataset& dataset);

// Accepts any N-Quads document without blank nodes. Throws ParseError.
Dataset parse_nquads(std::string_view text);

}  // namespace mythforge::rdf
