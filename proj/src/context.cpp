#include "prec/context.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "prec/error.hpp"
#include "prec/rdf/turtle.hpp"
#include "prec/rdf/vocab.hpp"

namespace prec {

using rdf::Term;
using rdf::Triple;
namespace vocab = rdf::vocab;

namespace {

std::string precIri(std::string_view local) { return std::string(vocab::kPrec) + std::string(local); }
std::string pvarIri(std::string_view local) { return std::string(vocab::kPvar) + std::string(local); }

Term iri(const std::string& value) { return Term::iri(value); }

bool mentionsTerm(const Term& term, const std::string& placeholder) {
  if (term.isIri()) return term.asIri().value == placeholder;
  if (term.isQuoted()) {
    const Triple& q = term.asQuoted();
    return mentionsTerm(q.subject(), placeholder) || mentionsTerm(q.predicate(), placeholder) ||
           mentionsTerm(q.object(), placeholder);
  }
  return false;
}

void collectPlaceholders(const Term& term, std::set<std::string>& out) {
  if (term.isIri() && term.asIri().value.starts_with(vocab::kPvar)) out.insert(term.asIri().value);
  if (term.isQuoted()) {
    const Triple& q = term.asQuoted();
    collectPlaceholders(q.subject(), out);
    collectPlaceholders(q.predicate(), out);
    collectPlaceholders(q.object(), out);
  }
}

Triple quotedPattern(const Term& s, const Term& p, const Term& o) { return Triple(s, p, o); }

std::map<std::string, Template> makeBuiltins() {
  Term source = iri(pvar::source());
  Term edgeIri = iri(pvar::edgeIri());
  Term destination = iri(pvar::destination());
  Term self = iri(pvar::self());
  Term predicate = iri(pvar::propertyPredicate());
  Term object = iri(pvar::propertyObject());
  Term node = iri(pvar::propertyNode());
  Term edgeTriple = Term::quoted(Triple(source, edgeIri, destination));
  Term rdfType = Term::iri(std::string(vocab::kRdfType));

  std::map<std::string, Template> out;
  out.emplace(builtin::rdfStarUnique(),
              Template{builtin::rdfStarUnique(),
                       TemplateKind::Edge,
                       {quotedPattern(source, edgeIri, destination),
                        quotedPattern(edgeTriple, rdfType,
                                      Term::iri(std::string(vocab::kPgo) + "Edge")),
                        quotedPattern(edgeTriple, predicate, object)}});
  out.emplace(builtin::directTriples(),
              Template{builtin::directTriples(),
                       TemplateKind::Property,
                       {quotedPattern(self, predicate, object)}});
  out.emplace(builtin::nodeBasedProperties(),
              Template{builtin::nodeBasedProperties(),
                       TemplateKind::Property,
                       {quotedPattern(self, predicate, node),
                        quotedPattern(node, Term::iri(std::string(vocab::kRdfValue)), object)}});
  // Same pattern order as parsed templates.
  for (auto& [_, t] : out) std::sort(t.patterns.begin(), t.patterns.end());
  return out;
}

std::string describeTerm(const Term& t) { return rdf::toNTriples(t); }

enum class Kind { PropertyRule, EdgeRule, NodeLabelRule, MetaPropertyRule, EdgeTemplate, PropertyTemplate, KindDefault };

const std::map<std::string, Kind>& classes() {
  static const std::map<std::string, Kind> m = {
      {precIri("PropertyRule"), Kind::PropertyRule},
      {precIri("EdgeRule"), Kind::EdgeRule},
      {precIri("NodeLabelRule"), Kind::NodeLabelRule},
      {precIri("MetaPropertyRule"), Kind::MetaPropertyRule},
      {precIri("EdgeTemplate"), Kind::EdgeTemplate},
      {precIri("PropertyTemplate"), Kind::PropertyTemplate},
  };
  return m;
}

// Allowed predicates per kind; true marks required ones.
const std::map<Kind, std::map<std::string, bool>>& fields() {
  static const std::map<Kind, std::map<std::string, bool>> m = {
      {Kind::PropertyRule,
       {{"propertyKey", true}, {"onNodesWithLabel", false}, {"onEdgesWithLabel", false},
        {"producedIRI", true}, {"templatedBy", false}}},
      {Kind::EdgeRule,
       {{"edgeLabel", false}, {"sourceLabel", false}, {"destinationLabel", false},
        {"producedIRI", true}, {"templatedBy", false}}},
      {Kind::NodeLabelRule, {{"nodeLabel", true}, {"producedIRI", true}}},
      {Kind::MetaPropertyRule, {{"metaPropertyKey", true}, {"producedIRI", true}}},
      {Kind::EdgeTemplate, {{"composedOf", true}}},
      {Kind::PropertyTemplate, {{"composedOf", true}}},
      {Kind::KindDefault, {{"templatedBy", true}}},
  };
  return m;
}

const std::set<std::string>& knownPredicates() {
  static const std::set<std::string> s = [] {
    std::set<std::string> out;
    for (const auto& [kind, f] : fields())
      for (const auto& [name, required] : f) out.insert(precIri(name));
    return out;
  }();
  return s;
}

std::string kindName(Kind k) {
  switch (k) {
    case Kind::PropertyRule: return "prec:PropertyRule";
    case Kind::EdgeRule: return "prec:EdgeRule";
    case Kind::NodeLabelRule: return "prec:NodeLabelRule";
    case Kind::MetaPropertyRule: return "prec:MetaPropertyRule";
    case Kind::EdgeTemplate: return "prec:EdgeTemplate";
    case Kind::PropertyTemplate: return "prec:PropertyTemplate";
    case Kind::KindDefault: return "kind default";
  }
  return {};
}

// The statements about one subject, by local predicate name.
struct Description {
  Term subject;
  Kind kind;
  std::map<std::string, std::vector<Term>> values;

  const Term* single(const std::string& name) const {
    auto it = values.find(name);
    return it == values.end() ? nullptr : &it->second.front();
  }

  std::string label(const std::string& name) const {
    const Term* t = single(name);
    if (!t->isLiteral())
      throw ContextError(describeTerm(subject) + ": prec:" + name + " must be a literal");
    std::string value(t->text());
    if (value.empty())
      throw ContextError(describeTerm(subject) + ": prec:" + name + " must not be empty");
    return value;
  }

  std::optional<std::string> optionalLabel(const std::string& name) const {
    if (!single(name)) return std::nullopt;
    return label(name);
  }

  std::string iriField(const std::string& name) const {
    const Term* t = single(name);
    if (!t->isIri())
      throw ContextError(describeTerm(subject) + ": prec:" + name + " must be an IRI");
    return t->asIri().value;
  }
};

void checkTemplate(const Template& t) {
  static const std::set<std::string> edgeAllowed = {
      pvar::source(), pvar::destination(), pvar::edgeIri(), pvar::propertyPredicate(),
      pvar::propertyObject(), pvar::propertyNode()};
  static const std::set<std::string> propertyAllowed = {
      pvar::self(), pvar::propertyPredicate(), pvar::propertyObject(), pvar::propertyNode()};
  const auto& allowed = t.kind == TemplateKind::Edge ? edgeAllowed : propertyAllowed;
  for (const auto& pattern : t.patterns) {
    std::set<std::string> used;
    collectPlaceholders(Term::quoted(pattern), used);
    for (const auto& p : used) {
      if (!allowed.contains(p))
        throw ContextError("template <" + t.name + ">: illegal placeholder <" + p + ">");
    }
  }
}

template <typename Rule, typename Signature>
void checkUnique(const std::vector<Rule>& rules, Signature signature, const char* what) {
  for (std::size_t i = 0; i < rules.size(); ++i) {
    for (std::size_t j = i + 1; j < rules.size(); ++j) {
      if (signature(rules[i]) == signature(rules[j]))
        throw ContextError(std::string("duplicate ") + what + " signature: " +
                           describeTerm(rules[i].id) + " and " + describeTerm(rules[j].id));
    }
  }
}

template <typename Rule>
void sortById(std::vector<Rule>& rules) {
  std::sort(rules.begin(), rules.end(), [](const Rule& a, const Rule& b) { return a.id < b.id; });
}

}  // namespace

namespace pvar {
std::string source() { return pvarIri("source"); }
std::string destination() { return pvarIri("destination"); }
std::string edgeIri() { return pvarIri("edgeIRI"); }
std::string self() { return pvarIri("self"); }
std::string propertyPredicate() { return pvarIri("propertyPredicate"); }
std::string propertyObject() { return pvarIri("propertyObject"); }
std::string propertyNode() { return pvarIri("propertyNode"); }
}  // namespace pvar

namespace builtin {
std::string rdfStarUnique() { return precIri("RdfStarUnique"); }
std::string directTriples() { return precIri("DirectTriples"); }
std::string nodeBasedProperties() { return precIri("NodeBasedProperties"); }
}  // namespace builtin

bool Template::mentions(const std::string& placeholder) const {
  return std::any_of(patterns.begin(), patterns.end(), [&](const Triple& p) {
    return mentionsTerm(Term::quoted(p), placeholder);
  });
}

const Template* Context::findTemplate(const std::string& name) const {
  if (auto it = templates.find(name); it != templates.end()) return &it->second;
  const auto& builtins = builtinTemplates();
  if (auto it = builtins.find(name); it != builtins.end()) return &it->second;
  return nullptr;
}

const std::map<std::string, Template>& builtinTemplates() {
  static const std::map<std::string, Template> builtins = makeBuiltins();
  return builtins;
}

Context parseContext(const rdf::Graph& g, std::string baseIriForMintedTerms) {
  if (!rdf::isAbsoluteIri(baseIriForMintedTerms))
    throw ContextError("base IRI for minted terms is not absolute: " + baseIriForMintedTerms);
  const std::string rdfType(vocab::kRdfType);
  const Term edgesIndividual = iri(precIri("Edges"));
  const Term propertiesIndividual = iri(precIri("Properties"));

  std::map<Term, Kind> kinds;
  for (const auto& t : g) {
    if (t.predicate().asIri().value != rdfType || !t.object().isIri()) continue;
    const std::string& cls = t.object().asIri().value;
    if (!cls.starts_with(vocab::kPrec)) continue;
    auto known = classes().find(cls);
    if (known == classes().end())
      throw ContextError("unknown prec class: " + rdf::toNTriples(t) + " .");
    auto [it, inserted] = kinds.emplace(t.subject(), known->second);
    if (!inserted && it->second != known->second)
      throw ContextError(describeTerm(t.subject()) + " is both " + kindName(it->second) +
                         " and " + kindName(known->second));
  }
  kinds.emplace(edgesIndividual, Kind::KindDefault);
  kinds.emplace(propertiesIndividual, Kind::KindDefault);

  std::map<Term, Description> descriptions;
  for (const auto& t : g) {
    const std::string& p = t.predicate().asIri().value;
    if (!p.starts_with(vocab::kPrec)) continue;
    if (!knownPredicates().contains(p))
      throw ContextError("unknown prec predicate: " + rdf::toNTriples(t) + " .");
    std::string name = p.substr(vocab::kPrec.size());
    auto kind = kinds.find(t.subject());
    if (kind == kinds.end())
      throw ContextError("prec:" + name + " used on " + describeTerm(t.subject()) +
                         ", which is not a rule, a template or a kind default");
    const auto& allowed = fields().at(kind->second);
    if (!allowed.contains(name))
      throw ContextError("prec:" + name + " is not allowed on " + kindName(kind->second) + " " +
                         describeTerm(t.subject()));
    auto [it, inserted] =
        descriptions.try_emplace(t.subject(), Description{t.subject(), kind->second, {}});
    auto& values = it->second.values[name];
    values.push_back(t.object());
    if (values.size() > 1 && name != "composedOf")
      throw ContextError(describeTerm(t.subject()) + ": prec:" + name + " given more than once");
  }
  // Typed subjects with no fields still need their required fields checked.
  for (const auto& [subject, kind] : kinds) {
    if (kind != Kind::KindDefault) descriptions.try_emplace(subject, Description{subject, kind, {}});
  }

  Context ctx;
  ctx.baseIriForMintedTerms = std::move(baseIriForMintedTerms);
  for (const auto& [subject, d] : descriptions) {
    for (const auto& [name, required] : fields().at(d.kind)) {
      if (required && !d.values.contains(name))
        throw ContextError(kindName(d.kind) + " " + describeTerm(subject) +
                           " is missing prec:" + name);
    }
    switch (d.kind) {
      case Kind::PropertyRule: {
        PropertyRule r{subject, d.label("propertyKey"), d.optionalLabel("onNodesWithLabel"),
                       d.optionalLabel("onEdgesWithLabel"), d.iriField("producedIRI")};
        if (r.onNodesWithLabel && r.onEdgesWithLabel)
          throw ContextError(describeTerm(subject) +
                             ": prec:onNodesWithLabel and prec:onEdgesWithLabel are exclusive");
        if (d.single("templatedBy")) r.templateRef = d.iriField("templatedBy");
        ctx.propertyRules.push_back(std::move(r));
        break;
      }
      case Kind::EdgeRule: {
        EdgeRule r{subject, d.optionalLabel("edgeLabel"), d.optionalLabel("sourceLabel"),
                   d.optionalLabel("destinationLabel"), d.iriField("producedIRI")};
        if (d.single("templatedBy")) r.templateRef = d.iriField("templatedBy");
        ctx.edgeRules.push_back(std::move(r));
        break;
      }
      case Kind::NodeLabelRule:
        ctx.nodeLabelRules.push_back(
            NodeLabelRule{subject, d.label("nodeLabel"), d.iriField("producedIRI")});
        break;
      case Kind::MetaPropertyRule:
        ctx.metaPropertyRules.push_back(
            MetaPropertyRule{subject, d.label("metaPropertyKey"), d.iriField("producedIRI")});
        break;
      case Kind::EdgeTemplate:
      case Kind::PropertyTemplate: {
        if (!subject.isIri())
          throw ContextError("template " + describeTerm(subject) + " must be named by an IRI");
        Template t{subject.asIri().value,
                   d.kind == Kind::EdgeTemplate ? TemplateKind::Edge : TemplateKind::Property,
                   {}};
        for (const auto& value : d.values.at("composedOf")) {
          if (!value.isQuoted())
            throw ContextError("template <" + t.name +
                               ">: prec:composedOf values must be quoted triples");
          t.patterns.push_back(value.asQuoted());
        }
        std::sort(t.patterns.begin(), t.patterns.end());
        checkTemplate(t);
        ctx.templates.emplace(t.name, std::move(t));
        break;
      }
      case Kind::KindDefault:
        ctx.defaults[subject == edgesIndividual ? ElementKind::Edges : ElementKind::Properties] =
            d.iriField("templatedBy");
        break;
    }
  }

  auto requireTemplate = [&ctx](const std::string& name, TemplateKind kind, const Term& user) {
    const Template* t = ctx.findTemplate(name);
    if (!t) throw ContextError(describeTerm(user) + ": unknown template <" + name + ">");
    if (t->kind != kind)
      throw ContextError(describeTerm(user) + ": template <" + name + "> is not " +
                         (kind == TemplateKind::Edge ? "an edge template" : "a property template"));
  };
  for (const auto& r : ctx.propertyRules) requireTemplate(r.templateRef, TemplateKind::Property, r.id);
  for (const auto& r : ctx.edgeRules) requireTemplate(r.templateRef, TemplateKind::Edge, r.id);
  if (auto it = ctx.defaults.find(ElementKind::Edges); it != ctx.defaults.end())
    requireTemplate(it->second, TemplateKind::Edge, edgesIndividual);
  if (auto it = ctx.defaults.find(ElementKind::Properties); it != ctx.defaults.end())
    requireTemplate(it->second, TemplateKind::Property, propertiesIndividual);

  checkUnique(ctx.propertyRules,
              [](const PropertyRule& r) { return std::tie(r.key, r.onNodesWithLabel, r.onEdgesWithLabel); },
              "property rule");
  checkUnique(ctx.edgeRules,
              [](const EdgeRule& r) { return std::tie(r.label, r.sourceLabel, r.destinationLabel); },
              "edge rule");
  checkUnique(ctx.nodeLabelRules, [](const NodeLabelRule& r) { return r.label; }, "node label rule");
  checkUnique(ctx.metaPropertyRules, [](const MetaPropertyRule& r) { return r.key; },
              "meta-property rule");

  sortById(ctx.propertyRules);
  sortById(ctx.edgeRules);
  sortById(ctx.nodeLabelRules);
  sortById(ctx.metaPropertyRules);
  return ctx;
}

}  // namespace prec
