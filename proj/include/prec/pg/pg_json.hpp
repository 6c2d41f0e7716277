#pragma once

#include <string>
#include <string_view>

#include "prec/pg/property_graph.hpp"

namespace prec::pg {

// Reads the JSON interchange format:
//
//   {"nodes": [{"id": "n1", "labels": ["Person"],
//               "properties": {"name": "Alice",
//                              "age": {"value": 30, "meta": {"source": "hr"}}}}],
//    "edges": [{"id": "e1", "start": "n1", "end": "n2", "label": "KNOWS",
//               "properties": {}}]}
//
// Ids may be strings or integers. An edge label may also be given as a
// one-element "labels" array. Booleans, nulls, nested lists and
// object-valued meta entries are rejected. Throws PgError.
PropertyGraph parsePgJson(std::string_view text);

// Inverse of parsePgJson; plain properties use the bare form, properties
// with meta use the object form. Output is pretty-printed with 2-space
// indentation.
std::string toPgJson(const PropertyGraph& graph);

}  // namespace prec::pg
