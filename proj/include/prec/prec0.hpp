#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prec/pg/property_graph.hpp"
#include "prec/rdf/graph.hpp"

namespace prec::prec0 {

// The vocabulary of the structural description.
struct Prec0Schema {
  std::string pgoNamespace = "http://ii.uwb.edu.pl/pgo#";
  std::string precNamespace = "http://bruy.at/prec#";
  // Property keys are minted as <propertyKeyBase><percent-encoded key> so
  // they can sit in predicate position.
  std::string propertyKeyBase = "http://bruy.at/prec/property-key/";

  rdf::Term kindNode() const { return rdf::Term::iri(pgoNamespace + "Node"); }
  rdf::Term kindEdge() const { return rdf::Term::iri(pgoNamespace + "Edge"); }
  rdf::Term kindPropertyKey() const { return rdf::Term::iri(precNamespace + "PropertyKey"); }
  rdf::Term kindPropertyValue() const {
    return rdf::Term::iri(precNamespace + "PropertyKeyValue");
  }
  rdf::Term kindNodeLabel() const { return rdf::Term::iri(precNamespace + "CreatedNodeLabel"); }
  rdf::Term kindEdgeLabel() const { return rdf::Term::iri(precNamespace + "CreatedEdgeLabel"); }
  rdf::Term metaOf() const { return rdf::Term::iri(precNamespace + "hasMetaProperties"); }
  rdf::Term propertyKeyIri(const std::string& key) const;
};

const Prec0Schema& defaultSchema();

// Describes every node, edge, label and property of `pg` as RDF. Blank
// node labels are deterministic: n<i>, e<i> (in id order), nl<i>, el<i>
// for label nodes, v<i> for property values, m<i> for meta holders and
// l<i> for list cells.
rdf::Graph describe(const pg::PropertyGraph& pg, const Prec0Schema& schema = defaultSchema());

// Rebuilds the property graph. Node and edge ids are the describing
// terms' labels. Throws MalformedPrec0Error naming the offending triple.
pg::PropertyGraph revert(const rdf::Graph& g, const Prec0Schema& schema = defaultSchema());

// Structural view of a description, with the triples backing each part.
struct ValueView {
  rdf::Term valueNode;
  // Literal, list head blank node or rdf:nil.
  rdf::Term object;
  pg::PropertyValue value;
  // rdf:type and rdf:value triples of the value node.
  std::vector<rdf::Triple> ownTriples;
  // rdf:first / rdf:rest triples of a list value.
  std::vector<rdf::Triple> listTriples;
};

struct MetaView {
  rdf::Term keyIri;
  std::string key;
  rdf::Triple link;  // (holder, keyIri, valueNode)
  ValueView value;
};

struct PropertyView {
  rdf::Term owner;
  rdf::Term keyIri;
  std::string key;
  rdf::Triple link;  // (owner, keyIri, valueNode)
  ValueView value;
  std::optional<rdf::Term> metaHolder;
  std::optional<rdf::Triple> metaLink;  // (valueNode, prec:hasMetaProperties, holder)
  std::vector<MetaView> meta;
};

struct LabelView {
  rdf::Term labelNode;
  std::string label;
  rdf::Triple link;  // (node, rdf:type, labelNode) or (edge, rdf:predicate, labelNode)
};

struct NodeView {
  rdf::Term term;
  rdf::Triple kindTriple;
  std::vector<LabelView> labels;
  std::vector<PropertyView> properties;
};

struct EdgeView {
  rdf::Term term;
  rdf::Term source;
  rdf::Term destination;
  LabelView label;
  // Typing, rdf:subject, rdf:object (rdf:predicate is label.link).
  std::vector<rdf::Triple> structure;
  std::vector<PropertyView> properties;
};

struct Prec0View {
  std::vector<NodeView> nodes;
  std::vector<EdgeView> edges;
};

// Validates `g` as a description and splits it into its parts. Every
// triple of `g` is accounted for by exactly one part or by the label/key
// scaffolding. Throws MalformedPrec0Error.
Prec0View analyze(const rdf::Graph& g, const Prec0Schema& schema = defaultSchema());

}  // namespace prec::prec0
