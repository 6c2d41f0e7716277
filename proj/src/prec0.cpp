#include "prec/prec0.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <set>

#include "prec/error.hpp"
#include "prec/rdf/turtle.hpp"
#include "prec/rdf/vocab.hpp"

namespace prec::prec0 {

using rdf::Graph;
using rdf::Term;
using rdf::Triple;
namespace vocab = rdf::vocab;

namespace {

Term iri(std::string_view value) { return Term::iri(std::string(value)); }

// Canonical xsd:double lexical form, e.g. "1.5E0", "-2.0E-3".
std::string formatDouble(double d) {
  if (std::isnan(d)) return "NaN";
  if (std::isinf(d)) return d > 0 ? "INF" : "-INF";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d, std::chars_format::scientific);
  std::string text(buf, end);
  auto e = text.find('e');
  std::string mantissa = text.substr(0, e);
  if (mantissa.find('.') == std::string::npos) mantissa += ".0";
  return mantissa + "E" + std::to_string(std::stoi(text.substr(e + 1)));
}

Term scalarLiteral(const pg::Scalar& s) {
  return std::visit(
      [](const auto& v) -> Term {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return Term::string(v);
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return Term::literal(std::to_string(v), std::string(vocab::kXsdInteger));
        } else {
          return Term::literal(formatDouble(v), std::string(vocab::kXsdDouble));
        }
      },
      s);
}

class Describer {
 public:
  Describer(const pg::PropertyGraph& pg, const Prec0Schema& schema)
      : pg_(pg), schema_(schema) {}

  Graph run() {
    const Term rdfType = iri(vocab::kRdfType);
    std::map<std::string, Term> nodeTerms;
    std::size_t index = 0;
    for (const auto& [id, node] : pg_.nodes()) {
      Term bn = Term::blank("n" + std::to_string(index++));
      nodeTerms.emplace(id, bn);
      out_.insert(Triple(bn, rdfType, schema_.kindNode()));
      for (const auto& label : node.labels) out_.insert(Triple(bn, rdfType, nodeLabel(label)));
      for (const auto& [key, p] : node.properties) property(bn, p);
    }
    index = 0;
    for (const auto& [id, edge] : pg_.edges()) {
      Term be = Term::blank("e" + std::to_string(index++));
      out_.insert(Triple(be, rdfType, schema_.kindEdge()));
      out_.insert(Triple(be, iri(vocab::kRdfSubject), nodeTerms.at(edge.source)));
      out_.insert(Triple(be, iri(vocab::kRdfObject), nodeTerms.at(edge.destination)));
      out_.insert(Triple(be, iri(vocab::kRdfPredicate), edgeLabel(edge.label)));
      for (const auto& [key, p] : edge.properties) property(be, p);
    }
    return std::move(out_);
  }

 private:
  Term labelNode(std::map<std::string, Term>& cache, const std::string& prefix,
                 const std::string& label, const Term& kind) {
    auto it = cache.find(label);
    if (it != cache.end()) return it->second;
    Term node = Term::blank(prefix + std::to_string(cache.size()));
    out_.insert(Triple(node, iri(vocab::kRdfsLabel), Term::string(label)));
    out_.insert(Triple(node, iri(vocab::kRdfType), kind));
    cache.emplace(label, node);
    return node;
  }

  Term nodeLabel(const std::string& l) {
    return labelNode(nodeLabels_, "nl", l, schema_.kindNodeLabel());
  }
  Term edgeLabel(const std::string& l) {
    return labelNode(edgeLabels_, "el", l, schema_.kindEdgeLabel());
  }

  Term key(const std::string& k) {
    Term keyIri = schema_.propertyKeyIri(k);
    if (keys_.insert(k).second) {
      out_.insert(Triple(keyIri, iri(vocab::kRdfsLabel), Term::string(k)));
      out_.insert(Triple(keyIri, iri(vocab::kRdfType), schema_.kindPropertyKey()));
    }
    return keyIri;
  }

  Term encode(const pg::PropertyValue& value) {
    const auto* list = std::get_if<pg::List>(&value.storage());
    if (!list) {
      return std::visit(
          [](const auto& v) -> Term {
            if constexpr (std::is_same_v<std::decay_t<decltype(v)>, pg::List>) {
              return Term::iri(std::string(vocab::kRdfNil));
            } else {
              return scalarLiteral(pg::Scalar(v));
            }
          },
          value.storage());
    }
    Term next = iri(vocab::kRdfNil);
    std::vector<Term> cells;
    for (std::size_t i = 0; i < list->size(); ++i)
      cells.push_back(Term::blank("l" + std::to_string(listCells_++)));
    for (std::size_t i = list->size(); i-- > 0;) {
      out_.insert(Triple(cells[i], iri(vocab::kRdfFirst), scalarLiteral((*list)[i])));
      out_.insert(Triple(cells[i], iri(vocab::kRdfRest), next));
      next = cells[i];
    }
    return next;
  }

  void property(const Term& owner, const pg::Property& p) {
    Term valueNode = Term::blank("v" + std::to_string(values_++));
    out_.insert(Triple(owner, key(p.key), valueNode));
    out_.insert(Triple(valueNode, iri(vocab::kRdfType), schema_.kindPropertyValue()));
    out_.insert(Triple(valueNode, iri(vocab::kRdfValue), encode(p.value)));
    if (p.meta.empty()) return;
    Term holder = Term::blank("m" + std::to_string(metaHolders_++));
    out_.insert(Triple(valueNode, schema_.metaOf(), holder));
    for (const auto& [mk, mv] : p.meta) property(holder, pg::Property{mk, mv, {}});
  }

  const pg::PropertyGraph& pg_;
  const Prec0Schema& schema_;
  Graph out_;
  std::map<std::string, Term> nodeLabels_;
  std::map<std::string, Term> edgeLabels_;
  std::set<std::string> keys_;
  std::size_t values_ = 0;
  std::size_t metaHolders_ = 0;
  std::size_t listCells_ = 0;
};

[[noreturn]] void malformed(const std::string& message, const Triple& at) {
  throw MalformedPrec0Error("malformed PREC-0 description: " + message + ": " +
                            rdf::toNTriples(at) + " .");
}

pg::Scalar decodeScalar(const Triple& at, const Term& literal) {
  if (!literal.isLiteral()) malformed("expected a literal value", at);
  const auto& lit = literal.asLiteral();
  if (lit.datatype == vocab::kXsdString) return lit.lexical;
  if (lit.datatype == vocab::kXsdInteger) {
    std::int64_t v = 0;
    const char* first = lit.lexical.data();
    const char* last = first + lit.lexical.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) malformed("invalid xsd:integer", at);
    return v;
  }
  if (lit.datatype == vocab::kXsdDouble) {
    double v = 0;
    const char* first = lit.lexical.data();
    const char* last = first + lit.lexical.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) malformed("invalid xsd:double", at);
    return v;
  }
  malformed("unsupported literal datatype <" + lit.datatype + ">", at);
}

class Analyzer {
 public:
  Analyzer(const Graph& g, const Prec0Schema& schema) : g_(g), schema_(schema) {}

  Prec0View run() {
    const Term rdfType = iri(vocab::kRdfType);
    std::vector<Triple> nodeKinds, edgeKinds;
    for (const auto& t : g_) {
      if (t.predicate() != rdfType) continue;
      const Term& o = t.object();
      if (o == schema_.kindNode()) nodeKinds.push_back(t);
      else if (o == schema_.kindEdge()) edgeKinds.push_back(t);
      else if (o == schema_.kindNodeLabel()) readLabel(t, nodeLabels_);
      else if (o == schema_.kindEdgeLabel()) readLabel(t, edgeLabels_);
      else if (o == schema_.kindPropertyKey()) readLabel(t, keys_);
      else if (o == schema_.kindPropertyValue()) valueNodes_.insert(t.subject());
    }
    for (const auto& t : nodeKinds) nodes_.insert(t.subject());
    for (const auto& t : edgeKinds) {
      if (nodes_.contains(t.subject())) malformed("element typed as both node and edge", t);
    }

    Prec0View view;
    for (const auto& kind : nodeKinds) view.nodes.push_back(node(kind));
    for (const auto& kind : edgeKinds) view.edges.push_back(edge(kind));
    for (const auto& t : g_) {
      if (!consumed_.contains(t)) malformed("triple is not part of any described element", t);
    }
    return view;
  }

 private:
  // Reads the scaffolding of a label or key node: its kind and rdfs:label.
  void readLabel(const Triple& kind, std::map<Term, std::string>& into) {
    const Term& subject = kind.subject();
    if (into.contains(subject)) return;
    if (kind.object() == schema_.kindPropertyKey() && !subject.isIri())
      malformed("property key must be an IRI", kind);
    std::optional<std::string> text;
    for (const auto& t : g_.bySubject(subject)) {
      if (t == kind) continue;
      if (t.predicate().asIri().value == vocab::kRdfsLabel && !text && t.object().isLiteral() &&
          t.object().asLiteral().datatype == vocab::kXsdString) {
        text = std::string(t.object().text());
        consumed_.insert(t);
      } else {
        malformed("unexpected triple on a label or key node", t);
      }
    }
    if (!text) malformed("label or key node without a string rdfs:label", kind);
    consumed_.insert(kind);
    into.emplace(subject, *text);
  }

  ValueView value(const Triple& link) {
    const Term& node = link.object();
    if (!valueNodes_.contains(node)) malformed("property does not point to a value node", link);
    if (!usedValueNodes_.insert(node).second) malformed("value node shared by two properties", link);
    ValueView view{node, node, {}, {}, {}};
    std::optional<Triple> valueTriple;
    for (const auto& t : g_.bySubject(node)) {
      const std::string& p = t.predicate().asIri().value;
      if (p == vocab::kRdfType && t.object() == schema_.kindPropertyValue()) {
        view.ownTriples.push_back(t);
      } else if (p == vocab::kRdfValue) {
        if (valueTriple) malformed("value node with several rdf:value", t);
        valueTriple = t;
        view.ownTriples.push_back(t);
      } else if (t.predicate() != schema_.metaOf()) {
        malformed("unknown predicate on a value node", t);
      }
    }
    if (!valueTriple) malformed("value node with no rdf:value", link);
    view.object = valueTriple->object();
    view.value = decodeValue(*valueTriple, view.listTriples);
    for (const auto& t : view.ownTriples) consumed_.insert(t);
    for (const auto& t : view.listTriples) consumed_.insert(t);
    return view;
  }

  pg::PropertyValue decodeValue(const Triple& valueTriple, std::vector<Triple>& listTriples) {
    const Term& object = valueTriple.object();
    if (object.isLiteral()) return pg::PropertyValue(decodeScalar(valueTriple, object));
    const Term nil = iri(vocab::kRdfNil);
    if (object != nil && !object.isBlank()) malformed("unsupported property value", valueTriple);
    pg::List list;
    std::set<Term> seen;
    Term cell = object;
    while (cell != nil) {
      if (!cell.isBlank() || !seen.insert(cell).second)
        malformed("malformed list value", valueTriple);
      std::optional<Triple> first, rest;
      for (const auto& t : g_.bySubject(cell)) {
        const std::string& p = t.predicate().asIri().value;
        if (p == vocab::kRdfFirst && !first) first = t;
        else if (p == vocab::kRdfRest && !rest) rest = t;
        else malformed("unexpected triple on a list cell", t);
      }
      if (!first || !rest) malformed("list cell without rdf:first and rdf:rest", valueTriple);
      list.push_back(decodeScalar(*first, first->object()));
      listTriples.push_back(*first);
      listTriples.push_back(*rest);
      cell = rest->object();
    }
    return pg::PropertyValue(std::move(list));
  }

  PropertyView property(const Triple& link, bool allowMeta) {
    auto key = keys_.find(link.predicate());
    if (key == keys_.end()) malformed("unknown predicate on a structural node", link);
    PropertyView view{link.subject(), link.predicate(), key->second, link, value(link), {}, {}, {}};
    consumed_.insert(link);
    for (const auto& t : g_.bySubject(view.value.valueNode)) {
      if (t.predicate() != schema_.metaOf()) continue;
      if (!allowMeta) malformed("meta-property carrying meta-properties", t);
      if (view.metaHolder) malformed("value node with several meta holders", t);
      const Term& holder = t.object();
      if (!holder.isBlank() && !holder.isIri()) malformed("invalid meta holder", t);
      if (!metaHolders_.insert(holder).second) malformed("meta holder shared", t);
      view.metaHolder = holder;
      view.metaLink = t;
      consumed_.insert(t);
      std::set<std::string> seenKeys;
      for (const auto& m : g_.bySubject(holder)) {
        PropertyView inner = property(m, false);
        if (!seenKeys.insert(inner.key).second) malformed("duplicate meta-property key", m);
        view.meta.push_back(MetaView{inner.keyIri, inner.key, inner.link, inner.value});
      }
    }
    return view;
  }

  std::vector<PropertyView> properties(const std::vector<Triple>& links) {
    std::vector<PropertyView> out;
    std::set<std::string> seenKeys;
    for (const auto& link : links) {
      out.push_back(property(link, true));
      if (!seenKeys.insert(out.back().key).second) malformed("duplicate property key", link);
    }
    return out;
  }

  void checkElementTerm(const Triple& kind) {
    const Term& s = kind.subject();
    if (!s.isBlank() && !s.isIri()) malformed("element must be a blank node or an IRI", kind);
  }

  NodeView node(const Triple& kind) {
    checkElementTerm(kind);
    NodeView view{kind.subject(), kind, {}, {}};
    consumed_.insert(kind);
    std::vector<Triple> links;
    for (const auto& t : g_.bySubject(kind.subject())) {
      if (t == kind) continue;
      if (t.predicate().asIri().value == vocab::kRdfType) {
        auto label = nodeLabels_.find(t.object());
        if (label == nodeLabels_.end()) malformed("node typed with an unknown label", t);
        view.labels.push_back(LabelView{t.object(), label->second, t});
        consumed_.insert(t);
      } else {
        links.push_back(t);
      }
    }
    view.properties = properties(links);
    return view;
  }

  EdgeView edge(const Triple& kind) {
    checkElementTerm(kind);
    std::optional<Triple> subject, object, predicate;
    std::vector<Triple> links;
    for (const auto& t : g_.bySubject(kind.subject())) {
      if (t == kind) continue;
      const std::string& p = t.predicate().asIri().value;
      auto single = [&](std::optional<Triple>& slot) {
        if (slot) malformed("edge with several " + rdf::toNTriples(t.predicate()), t);
        slot = t;
      };
      if (p == vocab::kRdfSubject) single(subject);
      else if (p == vocab::kRdfObject) single(object);
      else if (p == vocab::kRdfPredicate) single(predicate);
      else if (p == vocab::kRdfType) malformed("edge with an extra rdf:type", t);
      else links.push_back(t);
    }
    if (!subject) malformed("edge without rdf:subject", kind);
    if (!object) malformed("edge without rdf:object", kind);
    if (!predicate) malformed("edge without rdf:predicate", kind);
    if (!nodes_.contains(subject->object())) malformed("edge source is not a node", *subject);
    if (!nodes_.contains(object->object())) malformed("edge destination is not a node", *object);
    auto label = edgeLabels_.find(predicate->object());
    if (label == edgeLabels_.end()) malformed("edge label is not a created edge label", *predicate);
    EdgeView view{kind.subject(),
                  subject->object(),
                  object->object(),
                  LabelView{predicate->object(), label->second, *predicate},
                  {kind, *subject, *object},
                  {}};
    consumed_.insert(kind);
    consumed_.insert(*subject);
    consumed_.insert(*object);
    consumed_.insert(*predicate);
    view.properties = properties(links);
    return view;
  }

  const Graph& g_;
  const Prec0Schema& schema_;
  std::set<Term> nodes_;
  std::map<Term, std::string> nodeLabels_;
  std::map<Term, std::string> edgeLabels_;
  std::map<Term, std::string> keys_;
  std::set<Term> valueNodes_;
  std::set<Term> usedValueNodes_;
  std::set<Term> metaHolders_;
  std::set<Triple> consumed_;
};

std::string elementId(const Term& t) { return std::string(t.text()); }

pg::PropertyMap toProperties(const std::vector<PropertyView>& views) {
  pg::PropertyMap out;
  for (const auto& v : views) {
    pg::Property p{v.key, v.value.value, {}};
    for (const auto& m : v.meta) p.meta[m.key] = m.value.value;
    out.emplace(v.key, std::move(p));
  }
  return out;
}

}  // namespace

Term Prec0Schema::propertyKeyIri(const std::string& key) const {
  return Term::iri(propertyKeyBase + rdf::percentEncode(key));
}

const Prec0Schema& defaultSchema() {
  static const Prec0Schema schema;
  return schema;
}

Graph describe(const pg::PropertyGraph& pg, const Prec0Schema& schema) {
  return Describer(pg, schema).run();
}

Prec0View analyze(const Graph& g, const Prec0Schema& schema) {
  return Analyzer(g, schema).run();
}

pg::PropertyGraph revert(const Graph& g, const Prec0Schema& schema) {
  Prec0View view = analyze(g, schema);
  pg::PropertyGraph out;
  for (const auto& n : view.nodes) {
    pg::PgNode node;
    node.id = elementId(n.term);
    for (const auto& l : n.labels) node.labels.insert(l.label);
    node.properties = toProperties(n.properties);
    out.addNode(std::move(node));
  }
  for (const auto& e : view.edges) {
    pg::PgEdge edge;
    edge.id = elementId(e.term);
    edge.source = elementId(e.source);
    edge.destination = elementId(e.destination);
    edge.label = e.label.label;
    edge.properties = toProperties(e.properties);
    out.addEdge(std::move(edge));
  }
  return out;
}

}  // namespace prec::prec0
