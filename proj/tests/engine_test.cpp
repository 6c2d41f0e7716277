#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "prec/context.hpp"
#include "prec/engine.hpp"
#include "prec/error.hpp"
#include "prec/pg/pg_json.hpp"
#include "prec/prec0.hpp"
#include "prec/rdf/isomorphism.hpp"
#include "prec/rdf/turtle.hpp"
#include "prec/rdf/vocab.hpp"
#include "support/generators.hpp"

namespace prec {
namespace {

using rdf::Graph;
using rdf::Term;
using rdf::Triple;

std::string readFixture(const std::string& name) {
  std::ifstream in(std::string(PREC_FIXTURE_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kHeader =
    "@prefix prec: <http://bruy.at/prec#> .\n"
    "@prefix pvar: <http://bruy.at/prec-trans#> .\n"
    "@prefix ex: <http://example.org/> .\n"
    "@prefix : <http://example.org/context#> .\n";

Context contextFrom(const std::string& body) {
  return parseContext(rdf::parseTurtleStar(kHeader + body));
}

Context defaultsOnly() { return parseContext(rdf::parseTurtleStar(readFixture("defaults_context.ttl"))); }

Term iri(const std::string& s) { return Term::iri(s); }
Term rdfType() { return iri(std::string(rdf::vocab::kRdfType)); }

// Pattern count split into plain and property-bearing patterns, by
// scanning for the property placeholders.
std::pair<std::size_t, std::size_t> patternSplit(const Template& t) {
  std::size_t plain = 0, perProperty = 0;
  for (const auto& p : t.patterns) {
    std::string text = rdf::toNTriples(p);
    bool property = text.find(pvar::propertyPredicate()) != std::string::npos ||
                    text.find(pvar::propertyObject()) != std::string::npos ||
                    text.find(pvar::propertyNode()) != std::string::npos;
    (property ? perProperty : plain)++;
  }
  return {plain, perProperty};
}

std::vector<Binding> propertyBindings(std::size_t n) {
  std::vector<Binding> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({{pvar::propertyPredicate(), iri("http://example.org/p" + std::to_string(i))},
                   {pvar::propertyObject(), Term::string(std::to_string(i))},
                   {pvar::propertyNode(), Term::blank("v" + std::to_string(i))}});
  }
  return out;
}

TEST(InstantiateTest, RdfStarUniqueCounts) {
  const Template& t = builtinTemplates().at(builtin::rdfStarUnique());
  auto [plain, perProperty] = patternSplit(t);
  ASSERT_EQ(plain, 2u);
  ASSERT_EQ(perProperty, 1u);
  Binding base{{pvar::source(), Term::blank("a")},
               {pvar::destination(), Term::blank("b")},
               {pvar::edgeIri(), iri("http://example.org/knows")}};
  for (std::size_t n : {0u, 1u, 2u, 5u}) {
    Graph out = instantiate(t, base, propertyBindings(n));
    EXPECT_EQ(out.size(), plain + perProperty * n) << n;
  }
  Graph two = instantiate(t, base, propertyBindings(2));
  EXPECT_EQ(two.size(), 4u);
  Triple asserted(Term::blank("a"), iri("http://example.org/knows"), Term::blank("b"));
  EXPECT_TRUE(two.contains(asserted));
  EXPECT_TRUE(two.contains(
      Triple(Term::quoted(asserted), iri("http://example.org/p1"), Term::string("1"))));
}

TEST(InstantiateTest, DirectTriplesOnePerProperty) {
  const Template& t = builtinTemplates().at(builtin::directTriples());
  Graph out = instantiate(t, {{pvar::self(), Term::blank("n")}}, propertyBindings(1));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(*out.begin(), Triple(Term::blank("n"), iri("http://example.org/p0"), Term::string("0")));
}

TEST(InstantiateTest, Errors) {
  const Template& t = builtinTemplates().at(builtin::rdfStarUnique());
  EXPECT_THROW(instantiate(t, {{pvar::source(), Term::blank("a")}}, {}), TemplateError);
  Binding badPredicate{{pvar::source(), Term::blank("a")},
                       {pvar::destination(), Term::blank("b")},
                       {pvar::edgeIri(), Term::blank("notAnIri")}};
  EXPECT_THROW(instantiate(t, badPredicate, {}), TemplateError);
}

PropertyRule propertyRule(const std::string& id, const std::string& key,
                          std::optional<std::string> nodeLabel = std::nullopt,
                          std::optional<std::string> edgeLabel = std::nullopt) {
  return PropertyRule{iri("http://example.org/context#" + id), key, nodeLabel, edgeLabel,
                      "http://example.org/" + id};
}

TEST(MatchPropertyRuleTest, SpecificRuleBeatsGeneralRule) {
  std::vector<PropertyRule> rules = {propertyRule("personNameRule", "name", "Person"),
                                     propertyRule("generalNameRule", "name")};
  auto alice = matchPropertyRule({"name", false, {"Person"}, "alice"}, rules, {});
  ASSERT_TRUE(alice && alice->rule);
  EXPECT_EQ(alice->rule->id, rules[0].id);
  EXPECT_EQ(alice->score, 2);
  EXPECT_EQ(alice->competing, std::vector<Term>{rules[1].id});
  auto acme = matchPropertyRule({"name", false, {"Company"}, "acme"}, rules, {});
  ASSERT_TRUE(acme && acme->rule);
  EXPECT_EQ(acme->rule->id, rules[1].id);
  EXPECT_EQ(acme->score, 1);
}

TEST(MatchPropertyRuleTest, TieIsAnError) {
  std::vector<PropertyRule> rules = {propertyRule("a", "name", "Person"),
                                     propertyRule("b", "name", "Person")};
  try {
    matchPropertyRule({"name", false, {"Person"}, "_:n0"}, rules, {});
    FAIL();
  } catch (const SpecificityTieError& e) {
    std::string what = e.what();
    EXPECT_NE(what.find("context#a"), std::string::npos) << what;
    EXPECT_NE(what.find("context#b"), std::string::npos) << what;
    EXPECT_NE(what.find("_:n0"), std::string::npos) << what;
  }
}

TEST(MatchPropertyRuleTest, DefaultsOnlyWhenNothingMatches) {
  std::map<ElementKind, std::string> defaults{{ElementKind::Properties, builtin::directTriples()}};
  std::vector<PropertyRule> rules = {propertyRule("onEdge", "since", std::nullopt, "KNOWS")};
  auto onNode = matchPropertyRule({"since", false, {"KNOWS"}, "x"}, rules, defaults);
  ASSERT_TRUE(onNode);
  EXPECT_EQ(onNode->rule, nullptr);
  EXPECT_EQ(onNode->score, 0);
  EXPECT_EQ(onNode->templateRef, builtin::directTriples());
  auto onEdge = matchPropertyRule({"since", true, {"KNOWS"}, "x"}, rules, defaults);
  ASSERT_TRUE(onEdge && onEdge->rule);
  EXPECT_EQ(onEdge->score, 2);
  EXPECT_FALSE(matchPropertyRule({"other", false, {}, "x"}, rules, {}));
}

// Reference selection, written out directly from the scoring definition.
struct Expected {
  bool tie = false;
  std::optional<std::size_t> index;
  bool useDefault = false;
};

Expected referenceSelect(const PropertyOccurrence& occ, const std::vector<PropertyRule>& rules,
                         bool haveDefault) {
  int best = -1;
  std::vector<std::size_t> winners;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const auto& r = rules[i];
    if (r.key != occ.key) continue;
    int s = 1;
    if (r.onNodesWithLabel) {
      if (occ.onEdge || !occ.ownerLabels.count(*r.onNodesWithLabel)) continue;
      ++s;
    }
    if (r.onEdgesWithLabel) {
      if (!occ.onEdge || !occ.ownerLabels.count(*r.onEdgesWithLabel)) continue;
      ++s;
    }
    if (s > best) {
      best = s;
      winners = {i};
    } else if (s == best) {
      winners.push_back(i);
    }
  }
  if (winners.size() > 1) return {true, std::nullopt, false};
  if (winners.size() == 1) return {false, winners[0], false};
  return {false, std::nullopt, haveDefault};
}

TEST(MatchPropertyRuleProperty, AgreesWithReferenceAndIsDeterministic) {
  std::mt19937_64 rng(3);
  auto pick = [&](const std::vector<std::string>& pool) { return pool[rng() % pool.size()]; };
  const std::vector<std::string> keys = {"name", "age", "since"};
  const std::vector<std::string> labels = {"Person", "Company", "KNOWS"};
  int ties = 0;
  for (int i = 0; i < 2000; ++i) {
    std::vector<PropertyRule> rules;
    std::size_t n = rng() % 5;
    for (std::size_t r = 0; r < n; ++r) {
      std::optional<std::string> node, edge;
      switch (rng() % 3) {
        case 1: node = pick(labels); break;
        case 2: edge = pick(labels); break;
        default: break;
      }
      rules.push_back(propertyRule("r" + std::to_string(r), pick(keys), node, edge));
    }
    PropertyOccurrence occ{pick(keys), rng() % 2 == 0, {}, "elt"};
    std::size_t labelCount = occ.onEdge ? 1 : rng() % 3;
    for (std::size_t l = 0; l < labelCount; ++l) occ.ownerLabels.insert(pick(labels));
    bool haveDefault = rng() % 2 == 0;
    std::map<ElementKind, std::string> defaults;
    if (haveDefault) defaults[ElementKind::Properties] = builtin::directTriples();

    Expected expected = referenceSelect(occ, rules, haveDefault);
    if (expected.tie) {
      ++ties;
      EXPECT_THROW(matchPropertyRule(occ, rules, defaults), SpecificityTieError);
      continue;
    }
    auto got = matchPropertyRule(occ, rules, defaults);
    auto again = matchPropertyRule(occ, rules, defaults);
    if (expected.index) {
      ASSERT_TRUE(got && got->rule);
      EXPECT_EQ(got->rule, &rules[*expected.index]);
      EXPECT_EQ(again->rule, got->rule);
    } else if (expected.useDefault) {
      ASSERT_TRUE(got);
      EXPECT_EQ(got->rule, nullptr);
    } else {
      EXPECT_FALSE(got);
    }
  }
  EXPECT_GT(ties, 20);
}

EdgeRule edgeRule(const std::string& id, std::optional<std::string> label,
                  std::optional<std::string> source = std::nullopt,
                  std::optional<std::string> destination = std::nullopt) {
  return EdgeRule{iri("http://example.org/context#" + id), label, source, destination,
                  "http://example.org/" + id};
}

TEST(MatchEdgeRuleTest, Specificity) {
  std::vector<EdgeRule> rules = {edgeRule("any", std::nullopt), edgeRule("knows", "KNOWS"),
                                 edgeRule("personKnows", "KNOWS", "Person")};
  auto m = matchEdgeRule({"KNOWS", {"Person"}, {}, "e"}, rules, {});
  ASSERT_TRUE(m && m->rule);
  EXPECT_EQ(m->rule->id, rules[2].id);
  EXPECT_EQ(m->score, 2);
  auto other = matchEdgeRule({"LIKES", {"Person"}, {}, "e"}, rules, {});
  ASSERT_TRUE(other && other->rule);
  EXPECT_EQ(other->rule->id, rules[0].id);
  std::vector<EdgeRule> tied = {edgeRule("s", std::nullopt, "Person"),
                                edgeRule("d", std::nullopt, std::nullopt, "Person")};
  EXPECT_THROW(matchEdgeRule({"X", {"Person"}, {"Person"}, "e"}, tied, {}), SpecificityTieError);
}

TEST(ApplyTest, PersonAndCompanyNames) {
  auto pg = pg::parsePgJson(readFixture("people_pg.json"));
  Graph d = prec0::describe(pg);
  Context ctx = parseContext(rdf::parseTurtleStar(readFixture("people_context.ttl")));
  Graph out = apply(d, ctx);

  prec0::Prec0View view = prec0::analyze(d);
  ASSERT_EQ(view.nodes.size(), 2u);
  bool firstIsAlice = view.nodes[0].labels.front().label == "Person";
  Term alice = view.nodes[firstIsAlice ? 0 : 1].term;
  Term acme = view.nodes[firstIsAlice ? 1 : 0].term;
  Term foafName = iri("http://xmlns.com/foaf/0.1/name");
  Term exName = iri("http://example.org/name");
  EXPECT_EQ(out.match(std::nullopt, foafName, std::nullopt),
            std::vector<Triple>{Triple(alice, foafName, Term::string("Alice"))});
  EXPECT_EQ(out.match(std::nullopt, exName, std::nullopt),
            std::vector<Triple>{Triple(acme, exName, Term::string("acme"))});
  EXPECT_TRUE(out.contains(Triple(alice, rdfType(), iri("http://xmlns.com/foaf/0.1/Person"))));

  Triple works(alice, iri("http://example.org/worksFor"), acme);
  EXPECT_TRUE(out.contains(works));
  EXPECT_TRUE(out.contains(Triple(Term::quoted(works), rdfType(), iri("http://ii.uwb.edu.pl/pgo#Edge"))));
  EXPECT_TRUE(out.contains(Triple(Term::quoted(works), iri("http://example.org/vocab/since"),
                                  Term::literal("2020", std::string(rdf::vocab::kXsdInteger)))));
}

TEST(ApplyTest, IdentityContext) {
  testing::PgGenerator gen(1);
  for (int i = 0; i < 100; ++i) {
    Graph d = prec0::describe(gen.graph());
    EXPECT_TRUE(rdf::isomorphic(apply(d, Context{}), d));
  }
}

// Two bare nodes and one edge carrying n scalar properties.
pg::PropertyGraph edgeWithProperties(std::size_t n) {
  pg::PropertyGraph g;
  g.addNode(pg::PgNode{"a", {}, {}});
  g.addNode(pg::PgNode{"b", {}, {}});
  pg::PropertyMap props;
  for (std::size_t i = 0; i < n; ++i) {
    std::string key = "k" + std::to_string(i);
    props[key] = pg::Property{key, static_cast<std::int64_t>(i), {}};
  }
  g.addEdge(pg::PgEdge{"e", "a", "b", "KNOWS", props});
  return g;
}

TEST(ApplyTest, KnowsSinceProducesThreeEdgeTriples) {
  pg::PropertyGraph g = edgeWithProperties(0);
  pg::PgEdge e = g.edges().at("e");
  pg::PropertyGraph h;
  for (const auto& [_, n] : g.nodes()) h.addNode(n);
  e.properties["since"] = pg::Property{"since", 2020, {}};
  h.addEdge(e);
  Graph out = apply(prec0::describe(h), defaultsOnly());
  // Two node typings, the rest belongs to the edge.
  auto nodeTypes = out.match(std::nullopt, rdfType(), iri("http://ii.uwb.edu.pl/pgo#Node"));
  EXPECT_EQ(nodeTypes.size(), 2u);
  EXPECT_EQ(out.size() - nodeTypes.size(), 3u) << rdf::serializeNTriplesStar(out);
}

TEST(ApplyProperty, EdgeConservation) {
  for (std::size_t n = 0; n <= 8; ++n) {
    Graph out = apply(prec0::describe(edgeWithProperties(n)), defaultsOnly());
    EXPECT_EQ(out.size(), 2 + n + 2) << rdf::serializeNTriplesStar(out);
  }
}

TEST(ApplyTest, TieSurfacesAsError) {
  Graph d = prec0::describe(pg::parsePgJson(readFixture("tie_pg.json")));
  Context ctx = parseContext(rdf::parseTurtleStar(readFixture("tie_context.ttl")));
  EXPECT_THROW(apply(d, ctx), SpecificityTieError);
}

TEST(ApplyTest, MetaPropertyRuleCollapsesValueNode) {
  Graph d = prec0::describe(pg::parsePgJson(readFixture("meta_pg.json")));
  Context ctx = contextFrom(
      ":m a prec:MetaPropertyRule ; prec:metaPropertyKey \"source\" ; prec:producedIRI ex:source .\n"
      "prec:Properties prec:templatedBy prec:NodeBasedProperties .");
  Graph out = apply(d, ctx);
  auto meta = out.match(std::nullopt, iri("http://example.org/source"), std::nullopt);
  ASSERT_EQ(meta.size(), 1u);
  EXPECT_EQ(meta[0].object(), Term::string("hr"));
  EXPECT_TRUE(meta[0].subject().isBlank());
  // The holder hangs off the property node kept by NodeBasedProperties.
  auto holderLink = out.match(std::nullopt, prec0::defaultSchema().metaOf(), meta[0].subject());
  ASSERT_EQ(holderLink.size(), 1u);
  auto propertyLink = out.match(std::nullopt, iri("http://example.org/vocab/name"), holderLink[0].subject());
  EXPECT_EQ(propertyLink.size(), 1u);
}

TEST(LossWarningsTest, DependsOnTemplate) {
  Graph d = prec0::describe(pg::parsePgJson(readFixture("meta_pg.json")));
  auto direct = lossWarnings(d, defaultsOnly());
  ASSERT_EQ(direct.size(), 1u);
  EXPECT_EQ(direct[0].key, "name");
  EXPECT_EQ(direct[0].toString(), "WARN meta-loss element=" + rdf::toNTriples(direct[0].element) + " key=name");
  Context nodeBased = contextFrom("prec:Properties prec:templatedBy prec:NodeBasedProperties .");
  EXPECT_TRUE(lossWarnings(d, nodeBased).empty());
  Graph plain = prec0::describe(pg::parsePgJson(readFixture("people_pg.json")));
  EXPECT_TRUE(lossWarnings(plain, defaultsOnly()).empty());
  EXPECT_TRUE(lossWarnings(d, Context{}).empty());
}

TEST(ApplyTest, ReportsEveryDecision) {
  Graph d = prec0::describe(pg::parsePgJson(readFixture("people_pg.json")));
  Context ctx = parseContext(rdf::parseTurtleStar(readFixture("people_context.ttl")));
  ApplyResult r = applyWithReport(d, ctx);
  // 3 properties, 1 edge, 2 node labels.
  EXPECT_EQ(r.reports.size(), 6u);
  int withRule = 0;
  for (const auto& rep : r.reports) withRule += rep.rule.has_value();
  EXPECT_EQ(withRule, 4);  // Company has no node label rule; since uses the default
}

// A random context document over the generator vocabulary.
std::string randomContext(std::mt19937_64& rng) {
  auto pick = [&](const std::vector<std::string>& pool) { return pool[rng() % pool.size()]; };
  const std::vector<std::string> keys = {"name", "age", "since", "weight", "tags"};
  const std::vector<std::string> labels = {"Person", "Company", "City"};
  const std::vector<std::string> edgeLabels = {"KNOWS", "WORKS_FOR", "LIVES IN"};
  const std::vector<std::string> propertyTemplates = {"prec:DirectTriples", "prec:NodeBasedProperties"};
  std::string doc;
  std::size_t n = rng() % 6;
  for (std::size_t i = 0; i < n; ++i) {
    std::string id = ":p" + std::to_string(i);
    doc += id + " a prec:PropertyRule ; prec:propertyKey \"" + pick(keys) + "\" ; prec:producedIRI ex:p" +
           std::to_string(i) + " ; prec:templatedBy " + pick(propertyTemplates);
    switch (rng() % 3) {
      case 1: doc += " ; prec:onNodesWithLabel \"" + pick(labels) + "\""; break;
      case 2: doc += " ; prec:onEdgesWithLabel \"" + pick(edgeLabels) + "\""; break;
      default: break;
    }
    doc += " .\n";
  }
  n = rng() % 3;
  for (std::size_t i = 0; i < n; ++i)
    doc += ":e" + std::to_string(i) + " a prec:EdgeRule ; prec:edgeLabel \"" + pick(edgeLabels) +
           "\" ; prec:producedIRI ex:e" + std::to_string(i) + " .\n";
  n = rng() % 3;
  for (std::size_t i = 0; i < n; ++i)
    doc += ":n" + std::to_string(i) + " a prec:NodeLabelRule ; prec:nodeLabel \"" + pick(labels) +
           "\" ; prec:producedIRI ex:N" + std::to_string(i) + " .\n";
  if (rng() % 2) doc += ":m a prec:MetaPropertyRule ; prec:metaPropertyKey \"" + pick(keys) + "\" ; prec:producedIRI ex:meta .\n";
  if (rng() % 2) doc += "prec:Properties prec:templatedBy " + pick(propertyTemplates) + " .\n";
  if (rng() % 2) doc += "prec:Edges prec:templatedBy prec:RdfStarUnique .\n";
  return doc;
}

bool referencedElsewhere(const Graph& g, const Term& node) {
  std::string needle = rdf::toNTriples(node);
  for (const auto& t : g) {
    if (t.subject() == node) continue;
    if (rdf::toNTriples(t).find(needle) != std::string::npos) return true;
  }
  return false;
}

TEST(ApplyProperty, NoDanglingScaffolding) {
  testing::PgGenerator gen(55);
  std::mt19937_64 rng(56);
  const auto& schema = prec0::defaultSchema();
  int applied = 0;
  for (int i = 0; i < 150; ++i) {
    Graph d = prec0::describe(gen.graph());
    Context ctx;
    try {
      ctx = contextFrom(randomContext(rng));
    } catch (const ContextError&) {
      continue;
    }
    Graph out;
    try {
      out = apply(d, ctx);
    } catch (const SpecificityTieError&) {
      continue;
    }
    ++applied;
    for (const Term& kind : {schema.kindPropertyKey(), schema.kindNodeLabel(), schema.kindEdgeLabel()}) {
      for (const auto& t : out.match(std::nullopt, rdfType(), kind))
        EXPECT_TRUE(referencedElsewhere(out, t.subject())) << rdf::toNTriples(t);
    }
  }
  EXPECT_GE(applied, 75);
}

// Permuting the statements of a context document never changes the output.
TEST(ApplyProperty, StatementOrderIrrelevant) {
  testing::PgGenerator gen(90);
  std::mt19937_64 rng(91);
  for (int i = 0; i < 40; ++i) {
    Graph d = prec0::describe(gen.graph());
    std::string doc = randomContext(rng);
    std::vector<std::string> statements;
    std::istringstream in(doc);
    for (std::string line; std::getline(in, line);) statements.push_back(line);
    std::optional<Graph> reference;
    try {
      reference = apply(d, contextFrom(doc));
    } catch (const Error&) {
      continue;
    }
    for (int p = 0; p < 5; ++p) {
      std::shuffle(statements.begin(), statements.end(), rng);
      std::string shuffled;
      for (const auto& s : statements) shuffled += s + "\n";
      EXPECT_TRUE(rdf::isomorphic(apply(d, contextFrom(shuffled)), *reference)) << shuffled;
    }
  }
}

}  // namespace
}  // namespace prec
