#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "prec/rdf/graph.hpp"

namespace prec::rdf {

struct ParseOptions {
  // Resolves relative IRIs until the document sets its own @base.
  std::optional<std::string> baseIri;
  // Rename every blank node label to a process-unique one, so graphs parsed
  // from different documents can be merged without collisions. Labels are
  // kept verbatim otherwise.
  bool freshenBlankNodes = false;
};

// Parses a Turtle-star document restricted to: @prefix/@base (and the
// SPARQL-style PREFIX/BASE), the `a` keyword, `;` and `,` lists, quoted
// triples in subject and object positions, IRIs (<...> or prefixed),
// short string literals with a language tag or datatype, integer and
// decimal literals, and labelled blank nodes. Throws ParseError.
Graph parseTurtleStar(std::string_view text, const ParseOptions& options = {});

// One triple per line, canonical N-Triples term syntax, lines sorted
// bytewise.
std::string serializeNTriplesStar(const Graph& graph);

// Canonical N-Triples form of a single term / triple (no trailing " .").
std::string toNTriples(const Term& term);
std::string toNTriples(const Triple& triple);

// Prefix name (without ':') to namespace IRI.
using PrefixMap = std::map<std::string, std::string>;

// Turtle-star with the given prefixes, grouped by subject.
std::string serializeTurtleStar(const Graph& graph, const PrefixMap& prefixes = {});

// RFC 3986 reference resolution.
std::string resolveIri(std::string_view base, std::string_view reference);

}  // namespace prec::rdf
