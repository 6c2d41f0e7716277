#include "prec/engine.hpp"

#include <algorithm>

#include "prec/error.hpp"
#include "prec/prec0.hpp"
#include "prec/rdf/turtle.hpp"
#include "prec/rdf/vocab.hpp"

namespace prec {

using rdf::Graph;
using rdf::Term;
using rdf::Triple;
namespace vocab = rdf::vocab;

namespace {

bool isPlaceholder(const Term& t) { return t.isIri() && t.asIri().value.starts_with(vocab::kPvar); }

Term substitute(const Term& term, const Binding& binding);

Triple substitute(const Triple& pattern, const Binding& binding) {
  Term predicate = substitute(pattern.predicate(), binding);
  if (!predicate.isIri())
    throw TemplateError("non-IRI " + rdf::toNTriples(predicate) + " bound into predicate position");
  Term subject = substitute(pattern.subject(), binding);
  if (subject.isLiteral())
    throw TemplateError("literal " + rdf::toNTriples(subject) + " bound into subject position");
  return Triple(std::move(subject), std::move(predicate), substitute(pattern.object(), binding));
}

Term substitute(const Term& term, const Binding& binding) {
  if (isPlaceholder(term)) {
    auto it = binding.find(term.asIri().value);
    if (it == binding.end()) throw TemplateError("unbound placeholder <" + term.asIri().value + ">");
    return it->second;
  }
  if (term.isQuoted()) return Term::quoted(substitute(term.asQuoted(), binding));
  return term;
}

bool isPropertyPattern(const Triple& pattern) {
  Template single{"", TemplateKind::Property, {pattern}};
  return single.mentions(pvar::propertyPredicate()) || single.mentions(pvar::propertyObject()) ||
         single.mentions(pvar::propertyNode());
}

// Replaces `from` by `to` anywhere in the term, quoted triples included.
Term replaceTerm(const Term& term, const Term& from, const Term& to) {
  if (term == from) return to;
  if (term.isQuoted()) {
    const Triple& q = term.asQuoted();
    return Term::quoted(
        Triple(replaceTerm(q.subject(), from, to), q.predicate(), replaceTerm(q.object(), from, to)));
  }
  return term;
}

Triple replaceTerm(const Triple& t, const Term& from, const Term& to) {
  return Triple(replaceTerm(t.subject(), from, to), t.predicate(), replaceTerm(t.object(), from, to));
}

template <typename Rule, typename Matches, typename Score>
std::optional<RuleMatch<Rule>> selectRule(const std::vector<Rule>& rules, Matches matches,
                                          Score score, std::optional<std::string> defaultTemplate,
                                          const std::string& element) {
  std::vector<const Rule*> candidates;
  for (const auto& r : rules) {
    if (matches(r)) candidates.push_back(&r);
  }
  if (candidates.empty()) {
    if (!defaultTemplate) return std::nullopt;
    return RuleMatch<Rule>{nullptr, *defaultTemplate, 0, {}};
  }
  int best = -1;
  for (const Rule* r : candidates) best = std::max(best, score(*r));
  std::vector<const Rule*> top;
  for (const Rule* r : candidates) {
    if (score(*r) == best) top.push_back(r);
  }
  if (top.size() > 1) {
    std::string ids;
    for (const Rule* r : top) ids += " " + rdf::toNTriples(r->id);
    throw SpecificityTieError("specificity tie for " + element + " between rules" + ids);
  }
  RuleMatch<Rule> match{top.front(), top.front()->templateRef, best, {}};
  for (const Rule* r : candidates) {
    if (r != top.front()) match.competing.push_back(r->id);
  }
  return match;
}

std::optional<std::string> defaultFor(const std::map<ElementKind, std::string>& defaults,
                                      ElementKind kind) {
  auto it = defaults.find(kind);
  if (it == defaults.end()) return std::nullopt;
  return it->second;
}

// Shared state of one apply call.
class Engine {
 public:
  Engine(const Graph& input, const Context& ctx)
      : ctx_(ctx), view_(prec0::analyze(input)), out_(input) {
    for (const auto& n : view_.nodes) {
      auto& labels = nodeLabels_[n.term];
      for (const auto& l : n.labels) labels.insert(l.label);
    }
  }

  ApplyResult run() {
    metaStage();
    propertyStage();
    edgeStage();
    nodeLabelStage();
    sweepScaffolding();
    return {std::move(out_), std::move(reports_)};
  }

  std::vector<LossWarning> warnings() {
    std::vector<LossWarning> out;
    forEachProperty([&](const prec0::PropertyView& p, const PropertyOccurrence& occ) {
      if (p.meta.empty()) return;
      auto match = matchPropertyRule(occ, ctx_.propertyRules, ctx_.defaults);
      if (!match) return;
      if (!templateOf(match->templateRef, TemplateKind::Property).mentions(pvar::propertyNode()))
        out.push_back(LossWarning{p.owner, p.key});
    });
    return out;
  }

 private:
  Term mint(const std::string& name) const {
    return Term::iri(ctx_.baseIriForMintedTerms + rdf::percentEncode(name));
  }

  const Template& templateOf(const std::string& name, TemplateKind kind) const {
    const Template* t = ctx_.findTemplate(name);
    if (!t) throw TemplateError("unknown template <" + name + ">");
    if (t->kind != kind) throw TemplateError("template <" + name + "> reached with the wrong kind");
    return *t;
  }

  template <typename F>
  void forEachProperty(F&& f) const {
    for (const auto& n : view_.nodes) {
      for (const auto& p : n.properties) {
        f(p, PropertyOccurrence{p.key, false, nodeLabels_.at(n.term), rdf::toNTriples(n.term)});
      }
    }
    for (const auto& e : view_.edges) {
      for (const auto& p : e.properties) {
        f(p, PropertyOccurrence{p.key, true, {e.label.label}, rdf::toNTriples(e.term)});
      }
    }
  }

  void erase(const std::vector<Triple>& triples) {
    for (const auto& t : triples) out_.erase(t);
  }

  void metaStage() {
    forEachProperty([&](const prec0::PropertyView& p, const PropertyOccurrence&) {
      for (const auto& m : p.meta) {
        auto rule = std::find_if(ctx_.metaPropertyRules.begin(), ctx_.metaPropertyRules.end(),
                                 [&](const MetaPropertyRule& r) { return r.key == m.key; });
        MatchReport report{*p.metaHolder, "meta-property", m.key, {}, false, 0, {}};
        if (rule != ctx_.metaPropertyRules.end()) {
          out_.erase(m.link);
          erase(m.value.ownTriples);
          out_.insert(Triple(*p.metaHolder, Term::iri(rule->producedIri), m.value.object));
          report.rule = rule->id;
          report.score = 1;
        }
        reports_.push_back(std::move(report));
      }
    });
  }

  void dropMeta(const prec0::PropertyView& p) {
    if (!p.metaHolder) return;
    out_.erase(*p.metaLink);
    erase(out_.bySubject(*p.metaHolder));
    for (const auto& m : p.meta) {
      erase(m.value.ownTriples);
      erase(m.value.listTriples);
    }
  }

  void propertyStage() {
    forEachProperty([&](const prec0::PropertyView& p, const PropertyOccurrence& occ) {
      auto match = matchPropertyRule(occ, ctx_.propertyRules, ctx_.defaults);
      MatchReport report{p.owner, "property", p.key, {}, false, 0, {}};
      if (!match) {
        reports_.push_back(std::move(report));
        return;
      }
      const Template& t = templateOf(match->templateRef, TemplateKind::Property);
      Term predicate = match->rule ? Term::iri(match->rule->producedIri) : mint(p.key);
      out_.erase(p.link);
      erase(p.value.ownTriples);
      if (!t.mentions(pvar::propertyNode())) dropMeta(p);
      Graph produced = instantiate(t, {{pvar::self(), p.owner}},
                                   {{{pvar::propertyPredicate(), predicate},
                                     {pvar::propertyObject(), p.value.object},
                                     {pvar::propertyNode(), p.value.valueNode}}});
      if (occ.onEdge) {
        edgeProperties_[p.owner].push_back(ConvertedProperty{std::move(produced), p.value.valueNode});
      } else {
        out_.merge(produced);
      }
      report.rule = match->rule ? std::optional(match->rule->id) : std::nullopt;
      report.kindDefault = match->rule == nullptr;
      report.score = match->score;
      report.competing = match->competing;
      reports_.push_back(std::move(report));
    });
  }

  void edgeStage() {
    for (const auto& e : view_.edges) {
      EdgeOccurrence occ{e.label.label, nodeLabels_.at(e.source), nodeLabels_.at(e.destination),
                         rdf::toNTriples(e.term)};
      auto match = matchEdgeRule(occ, ctx_.edgeRules, ctx_.defaults);
      auto converted = edgeProperties_.find(e.term);
      MatchReport report{e.term, "edge", e.label.label, {}, false, 0, {}};
      if (!match) {
        if (converted != edgeProperties_.end()) {
          for (const auto& c : converted->second) out_.merge(c.produced);
        }
        reports_.push_back(std::move(report));
        continue;
      }
      const Template& t = templateOf(match->templateRef, TemplateKind::Edge);
      Term edgeIri = match->rule ? Term::iri(match->rule->producedIri) : mint(e.label.label);
      Term identity = Term::quoted(Triple(e.source, edgeIri, e.destination));
      erase(e.structure);
      out_.erase(e.label.link);

      // Property template output about the edge node becomes per-property
      // bindings; anything else referencing it is re-pointed at the
      // edge's quoted triple.
      std::vector<Binding> perProperty;
      if (converted != edgeProperties_.end()) {
        for (const auto& c : converted->second) {
          for (const auto& produced : c.produced) {
            if (produced.subject() == e.term) {
              perProperty.push_back({{pvar::propertyPredicate(), produced.predicate()},
                                     {pvar::propertyObject(), produced.object()},
                                     {pvar::propertyNode(), c.valueNode}});
            } else {
              out_.insert(replaceTerm(produced, e.term, identity));
            }
          }
        }
      }
      out_.merge(instantiate(t,
                             {{pvar::source(), e.source},
                              {pvar::destination(), e.destination},
                              {pvar::edgeIri(), edgeIri}},
                             perProperty));
      // Properties left in PREC-0 form.
      for (const auto& p : e.properties) {
        if (out_.erase(p.link)) out_.insert(replaceTerm(p.link, e.term, identity));
      }
      report.rule = match->rule ? std::optional(match->rule->id) : std::nullopt;
      report.kindDefault = match->rule == nullptr;
      report.score = match->score;
      report.competing = match->competing;
      reports_.push_back(std::move(report));
    }
  }

  void nodeLabelStage() {
    const Term rdfType = Term::iri(std::string(vocab::kRdfType));
    for (const auto& n : view_.nodes) {
      for (const auto& l : n.labels) {
        auto rule = std::find_if(ctx_.nodeLabelRules.begin(), ctx_.nodeLabelRules.end(),
                                 [&](const NodeLabelRule& r) { return r.label == l.label; });
        MatchReport report{n.term, "node-label", l.label, {}, false, 0, {}};
        if (rule != ctx_.nodeLabelRules.end()) {
          out_.erase(l.link);
          out_.insert(Triple(n.term, rdfType, Term::iri(rule->producedIri)));
          report.rule = rule->id;
          report.score = 1;
        }
        reports_.push_back(std::move(report));
      }
    }
  }

  static void collectTerms(const Term& t, std::set<Term>& into) {
    into.insert(t);
    if (t.isQuoted()) {
      const Triple& q = t.asQuoted();
      collectTerms(q.subject(), into);
      collectTerms(q.predicate(), into);
      collectTerms(q.object(), into);
    }
  }

  void sweepScaffolding() {
    const prec0::Prec0Schema& schema = prec0::defaultSchema();
    const Term rdfType = Term::iri(std::string(vocab::kRdfType));
    const Term rdfsLabel = Term::iri(std::string(vocab::kRdfsLabel));
    const std::set<Term> kinds = {schema.kindNodeLabel(), schema.kindEdgeLabel(),
                                  schema.kindPropertyKey()};
    std::set<Term> scaffolds;
    for (const auto& t : out_) {
      if (t.predicate() == rdfType && kinds.contains(t.object())) scaffolds.insert(t.subject());
    }
    auto isScaffoldTriple = [&](const Triple& t) {
      return scaffolds.contains(t.subject()) &&
             (t.predicate() == rdfsLabel || (t.predicate() == rdfType && kinds.contains(t.object())));
    };
    std::set<Term> referenced;
    for (const auto& t : out_) {
      if (isScaffoldTriple(t)) continue;
      collectTerms(t.subject(), referenced);
      collectTerms(t.predicate(), referenced);
      collectTerms(t.object(), referenced);
    }
    std::vector<Triple> unused;
    for (const auto& t : out_) {
      if (isScaffoldTriple(t) && !referenced.contains(t.subject())) unused.push_back(t);
    }
    erase(unused);
  }

  struct ConvertedProperty {
    Graph produced;
    Term valueNode;
  };

  const Context& ctx_;
  prec0::Prec0View view_;
  Graph out_;
  std::map<Term, std::set<std::string>> nodeLabels_;
  std::map<Term, std::vector<ConvertedProperty>> edgeProperties_;
  std::vector<MatchReport> reports_;
};

std::string ruleText(const std::optional<Term>& rule, bool kindDefault) {
  if (rule) return rdf::toNTriples(*rule);
  return kindDefault ? "default" : "none";
}

}  // namespace

Graph instantiate(const Template& t, const Binding& base, const std::vector<Binding>& perProperty) {
  Graph out;
  for (const auto& pattern : t.patterns) {
    if (!isPropertyPattern(pattern)) {
      out.insert(substitute(pattern, base));
      continue;
    }
    for (const auto& extra : perProperty) {
      Binding merged = extra;
      merged.insert(base.begin(), base.end());
      out.insert(substitute(pattern, merged));
    }
  }
  return out;
}

std::optional<RuleMatch<PropertyRule>> matchPropertyRule(
    const PropertyOccurrence& occurrence, const std::vector<PropertyRule>& rules,
    const std::map<ElementKind, std::string>& defaults) {
  auto matches = [&](const PropertyRule& r) {
    if (r.key != occurrence.key) return false;
    if (r.onNodesWithLabel &&
        (occurrence.onEdge || !occurrence.ownerLabels.contains(*r.onNodesWithLabel)))
      return false;
    if (r.onEdgesWithLabel &&
        (!occurrence.onEdge || !occurrence.ownerLabels.contains(*r.onEdgesWithLabel)))
      return false;
    return true;
  };
  auto score = [](const PropertyRule& r) {
    return 1 + (r.onNodesWithLabel ? 1 : 0) + (r.onEdgesWithLabel ? 1 : 0);
  };
  return selectRule(rules, matches, score, defaultFor(defaults, ElementKind::Properties),
                    "property '" + occurrence.key + "' of " + occurrence.element);
}

std::optional<RuleMatch<EdgeRule>> matchEdgeRule(const EdgeOccurrence& occurrence,
                                                 const std::vector<EdgeRule>& rules,
                                                 const std::map<ElementKind, std::string>& defaults) {
  auto matches = [&](const EdgeRule& r) {
    if (r.label && *r.label != occurrence.label) return false;
    if (r.sourceLabel && !occurrence.sourceLabels.contains(*r.sourceLabel)) return false;
    if (r.destinationLabel && !occurrence.destinationLabels.contains(*r.destinationLabel))
      return false;
    return true;
  };
  auto score = [](const EdgeRule& r) {
    return (r.label ? 1 : 0) + (r.sourceLabel ? 1 : 0) + (r.destinationLabel ? 1 : 0);
  };
  return selectRule(rules, matches, score, defaultFor(defaults, ElementKind::Edges),
                    "edge " + occurrence.element + " labelled '" + occurrence.label + "'");
}

std::string MatchReport::toString() const {
  std::string out = "MATCH kind=" + kind + " element=" + rdf::toNTriples(element) +
                    " name=" + name + " rule=" + ruleText(rule, kindDefault) +
                    " score=" + std::to_string(score);
  for (const auto& c : competing) out += " competing=" + rdf::toNTriples(c);
  return out;
}

std::string LossWarning::toString() const {
  return "WARN meta-loss element=" + rdf::toNTriples(element) + " key=" + key;
}

ApplyResult applyWithReport(const Graph& prec0, const Context& ctx) {
  return Engine(prec0, ctx).run();
}

std::vector<LossWarning> lossWarnings(const Graph& prec0, const Context& ctx) {
  return Engine(prec0, ctx).warnings();
}

}  // namespace prec
