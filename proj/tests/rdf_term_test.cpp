#include <gtest/gtest.h>

#include "prec/error.hpp"
#include "prec/rdf/graph.hpp"
#include "prec/rdf/vocab.hpp"

namespace prec::rdf {
namespace {

Term ex(const std::string& local) { return Term::iri("http://e/" + local); }

TEST(TermTest, IrisMustBeAbsolute) {
  EXPECT_NO_THROW(Term::iri("http://example.org/a"));
  EXPECT_NO_THROW(Term::iri("urn:isbn:123"));
  EXPECT_THROW(Term::iri("relative/path"), TermError);
  EXPECT_THROW(Term::iri(""), TermError);
  EXPECT_THROW(Term::iri("1http://x"), TermError);
}

TEST(TermTest, BlankNodeLabels) {
  EXPECT_NO_THROW(Term::blank("b0"));
  EXPECT_NO_THROW(Term::blank("_x.y-z"));
  EXPECT_THROW(Term::blank(""), TermError);
  EXPECT_THROW(Term::blank("a."), TermError);
  EXPECT_THROW(Term::blank("-a"), TermError);
  EXPECT_THROW(Term::blank("a b"), TermError);
}

TEST(TermTest, LanguageTaggedLiteralsUseLangString) {
  Term t = Term::langLiteral("chat", "fr");
  EXPECT_EQ(t.asLiteral().datatype, vocab::kRdfLangString);
  EXPECT_EQ(t.asLiteral().language, "fr");
  EXPECT_THROW(Term::literal("x", std::string(vocab::kRdfLangString)), TermError);
  EXPECT_THROW(Term::langLiteral("x", "not a tag"), TermError);
  EXPECT_EQ(Term::string("x").asLiteral().datatype, vocab::kXsdString);
}

TEST(TripleTest, RejectsLiteralSubjectAndNonIriPredicate) {
  EXPECT_THROW(Triple(Term::string("s"), ex("p"), ex("o")), TermError);
  EXPECT_THROW(Triple(ex("s"), Term::blank("p"), ex("o")), TermError);
  EXPECT_THROW(Triple(ex("s"), Term::string("p"), ex("o")), TermError);
  Triple inner(ex("s"), ex("p"), ex("o"));
  EXPECT_THROW(Triple(ex("s"), Term::quoted(inner), ex("o")), TermError);
  EXPECT_NO_THROW(Triple(Term::quoted(inner), ex("p"), Term::quoted(inner)));
}

TEST(TermTest, QuotedTriplesCompareByValue) {
  Term a = Term::quoted(Triple(Term::blank("x"), ex("p"), Term::string("1")));
  Term b = Term::quoted(Triple(Term::blank("x"), ex("p"), Term::string("1")));
  Term c = Term::quoted(Triple(Term::blank("y"), ex("p"), Term::string("1")));
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  EXPECT_TRUE(a.hasBlankNode());
  EXPECT_FALSE(ex("a").hasBlankNode());
}

TEST(GraphTest, SetSemantics) {
  Graph g;
  Triple t(ex("a"), ex("b"), ex("c"));
  EXPECT_TRUE(g.insert(t));
  EXPECT_FALSE(g.insert(t));
  EXPECT_EQ(g.size(), 1u);
  EXPECT_TRUE(g.contains(t));
  EXPECT_TRUE(g.erase(t));
  EXPECT_TRUE(g.empty());
}

TEST(GraphTest, MatchAndSubjectLookup) {
  Graph g{Triple(ex("a"), ex("p"), ex("x")), Triple(ex("a"), ex("q"), ex("y")),
          Triple(ex("b"), ex("p"), ex("x"))};
  EXPECT_EQ(g.bySubject(ex("a")).size(), 2u);
  EXPECT_EQ(g.bySubject(ex("zzz")).size(), 0u);
  EXPECT_EQ(g.match(std::nullopt, ex("p"), std::nullopt).size(), 2u);
  EXPECT_EQ(g.match(ex("a"), ex("p"), std::nullopt).size(), 1u);
  EXPECT_EQ(g.match(std::nullopt, std::nullopt, ex("y")).size(), 1u);
}

TEST(PercentEncodeTest, KeepsUnreservedOnly) {
  EXPECT_EQ(percentEncode("Person"), "Person");
  EXPECT_EQ(percentEncode("Has Space"), "Has%20Space");
  EXPECT_EQ(percentEncode("a/b#c"), "a%2Fb%23c");
  EXPECT_EQ(percentEncode("\xC3\xA9"), "%C3%A9");
  EXPECT_EQ(percentEncode("a-b_c.d~"), "a-b_c.d~");
}

}  // namespace
}  // namespace prec::rdf
