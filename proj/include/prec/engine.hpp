#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "prec/context.hpp"
#include "prec/rdf/graph.hpp"

namespace prec {

// Placeholder IRI -> bound term.
using Binding = std::map<std::string, rdf::Term>;

// Instantiates every pattern of `t`. Patterns mentioning a property
// placeholder (propertyPredicate, propertyObject, propertyNode) yield one
// triple per entry of `perProperty`, with that entry layered over `base`;
// the other patterns yield one triple from `base`. Throws TemplateError on
// an unbound placeholder or a non-IRI bound in predicate position.
rdf::Graph instantiate(const Template& t, const Binding& base,
                       const std::vector<Binding>& perProperty);

// A property occurrence as seen by the matcher.
struct PropertyOccurrence {
  std::string key;
  bool onEdge = false;
  // Node labels, or the single edge label.
  std::set<std::string> ownerLabels;
  // Used in diagnostics only.
  std::string element;
};

struct EdgeOccurrence {
  std::string label;
  std::set<std::string> sourceLabels;
  std::set<std::string> destinationLabels;
  std::string element;
};

// Outcome of rule selection. `rule` is null when the kind default applies.
template <typename Rule>
struct RuleMatch {
  const Rule* rule = nullptr;
  std::string templateRef;
  int score = 0;
  // Ids of the other matching rules.
  std::vector<rdf::Term> competing;
};

// Most specific matching rule: the key counts 1 and a label constraint 1;
// the kind default (if any) is used only when no rule matches. Returns
// nullopt when neither applies. Throws SpecificityTieError.
std::optional<RuleMatch<PropertyRule>> matchPropertyRule(
    const PropertyOccurrence& occurrence, const std::vector<PropertyRule>& rules,
    const std::map<ElementKind, std::string>& defaults);

// Each of label, source label and destination label constraints counts 1.
std::optional<RuleMatch<EdgeRule>> matchEdgeRule(const EdgeOccurrence& occurrence,
                                                 const std::vector<EdgeRule>& rules,
                                                 const std::map<ElementKind, std::string>& defaults);

struct MatchReport {
  rdf::Term element;
  // "meta-property", "property", "edge" or "node-label".
  std::string kind;
  // Key or label that was matched.
  std::string name;
  std::optional<rdf::Term> rule;
  bool kindDefault = false;
  int score = 0;
  std::vector<rdf::Term> competing;

  // One line, e.g. "MATCH kind=property element=_:n0 name=name rule=<...> score=2".
  std::string toString() const;
};

struct LossWarning {
  rdf::Term element;
  std::string key;

  // "WARN meta-loss element=<id> key=<k>"
  std::string toString() const;
};

struct ApplyResult {
  rdf::Graph graph;
  std::vector<MatchReport> reports;
};

// Rewrites a PREC-0 description according to `ctx`, in four stages:
// meta-property rules, property rules, edge rules, node label rules.
// Elements matched by no rule and no kind default keep their PREC-0 form.
// Label and key scaffolding left unreferenced is removed.
ApplyResult applyWithReport(const rdf::Graph& prec0, const Context& ctx);

inline rdf::Graph apply(const rdf::Graph& prec0, const Context& ctx) {
  return applyWithReport(prec0, ctx).graph;
}

// Property occurrences that carry meta-properties but whose chosen
// template has no pvar:propertyNode to hang them on.
std::vector<LossWarning> lossWarnings(const rdf::Graph& prec0, const Context& ctx);

}  // namespace prec
