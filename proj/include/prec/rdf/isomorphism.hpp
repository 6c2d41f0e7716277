#pragma once

#include <map>
#include <optional>
#include <string>

#include "prec/rdf/graph.hpp"

namespace prec::rdf {

// Blank node id in the first graph -> blank node id in the second.
using BlankNodeMapping = std::map<std::string, std::string>;

// Finds a bijection between the blank nodes of `a` and `b` under which the
// two graphs are equal (IRIs and literals map to themselves; the mapping
// also applies inside quoted triples). Colour refinement narrows the
// candidates, then a backtracking search checks every triple whose blank
// nodes are all assigned.
std::optional<BlankNodeMapping> findIsomorphism(const Graph& a, const Graph& b);

inline bool isomorphic(const Graph& a, const Graph& b) {
  return findIsomorphism(a, b).has_value();
}

// Applies a blank node renaming. Ids absent from the mapping are kept.
Term renameBlankNodes(const Term& term, const BlankNodeMapping& mapping);
Triple renameBlankNodes(const Triple& triple, const BlankNodeMapping& mapping);
Graph renameBlankNodes(const Graph& graph, const BlankNodeMapping& mapping);

}  // namespace prec::rdf
