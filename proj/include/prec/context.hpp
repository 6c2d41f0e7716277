#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prec/rdf/graph.hpp"

namespace prec {

// Placeholder IRIs usable in templates.
namespace pvar {
std::string source();
std::string destination();
std::string edgeIri();
std::string self();
std::string propertyPredicate();
std::string propertyObject();
std::string propertyNode();
}  // namespace pvar

// Built-in template names.
namespace builtin {
std::string rdfStarUnique();
std::string directTriples();
std::string nodeBasedProperties();
}  // namespace builtin

struct NodeLabelRule {
  rdf::Term id;
  std::string label;
  std::string producedIri;
  bool operator==(const NodeLabelRule&) const = default;
};

struct PropertyRule {
  rdf::Term id;
  std::string key;
  std::optional<std::string> onNodesWithLabel;
  std::optional<std::string> onEdgesWithLabel;
  std::string producedIri;
  std::string templateRef = builtin::directTriples();
  bool operator==(const PropertyRule&) const = default;
};

struct EdgeRule {
  rdf::Term id;
  std::optional<std::string> label;
  std::optional<std::string> sourceLabel;
  std::optional<std::string> destinationLabel;
  std::string producedIri;
  std::string templateRef = builtin::rdfStarUnique();
  bool operator==(const EdgeRule&) const = default;
};

struct MetaPropertyRule {
  rdf::Term id;
  std::string key;
  std::string producedIri;
  bool operator==(const MetaPropertyRule&) const = default;
};

enum class TemplateKind { Edge, Property };

struct Template {
  std::string name;
  TemplateKind kind;
  std::vector<rdf::Triple> patterns;

  // True if some pattern mentions the placeholder, quoted triples included.
  bool mentions(const std::string& placeholder) const;
  bool operator==(const Template&) const = default;
};

enum class ElementKind { Edges, Properties };

inline constexpr const char* kDefaultMintBase = "http://example.org/vocab/";

struct Context {
  std::vector<NodeLabelRule> nodeLabelRules;
  std::vector<PropertyRule> propertyRules;
  std::vector<EdgeRule> edgeRules;
  std::vector<MetaPropertyRule> metaPropertyRules;
  // User-declared templates; these shadow built-ins with the same name.
  std::map<std::string, Template> templates;
  std::map<ElementKind, std::string> defaults;
  std::string baseIriForMintedTerms = kDefaultMintBase;

  // User template, else built-in, else nullptr.
  const Template* findTemplate(const std::string& name) const;

  bool operator==(const Context&) const = default;
};

const std::map<std::string, Template>& builtinTemplates();

// Reads the rule vocabulary out of a context graph. Rule lists are sorted
// by rule id, so the statement order of the source document is
// irrelevant. Throws ContextError.
Context parseContext(const rdf::Graph& g, std::string baseIriForMintedTerms = kDefaultMintBase);

}  // namespace prec
