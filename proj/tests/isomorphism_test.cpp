#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "prec/rdf/isomorphism.hpp"
#include "prec/rdf/turtle.hpp"
#include "support/generators.hpp"

namespace prec::rdf {
namespace {

void collectBlanks(const Term& t, std::set<std::string>& out) {
  if (t.isBlank()) out.insert(t.asBlank().id);
  if (t.isQuoted()) {
    collectBlanks(t.asQuoted().subject(), out);
    collectBlanks(t.asQuoted().object(), out);
  }
}

std::vector<std::string> blanksOf(const Graph& g) {
  std::set<std::string> ids;
  for (const auto& t : g) {
    collectBlanks(t.subject(), ids);
    collectBlanks(t.object(), ids);
  }
  return {ids.begin(), ids.end()};
}

// Reference: try every bijection between the two blank node sets.
bool bruteForceIsomorphic(const Graph& a, const Graph& b) {
  if (a.size() != b.size()) return false;
  auto left = blanksOf(a);
  auto right = blanksOf(b);
  if (left.size() != right.size()) return false;
  std::sort(right.begin(), right.end());
  do {
    BlankNodeMapping m;
    for (std::size_t i = 0; i < left.size(); ++i) m[left[i]] = right[i];
    if (renameBlankNodes(a, m) == b) return true;
  } while (std::next_permutation(right.begin(), right.end()));
  return false;
}

Graph ttl(const std::string& text) { return parseTurtleStar(text); }

TEST(IsomorphismTest, RenamedBlankNodes) {
  EXPECT_TRUE(isomorphic(ttl("_:a <http://p> _:b ."), ttl("_:x <http://p> _:y .")));
  EXPECT_FALSE(isomorphic(ttl("_:a <http://p> _:a ."), ttl("_:x <http://p> _:y .")));
}

TEST(IsomorphismTest, InsideQuotedTriples) {
  EXPECT_TRUE(isomorphic(ttl("<< _:a <http://p> _:b >> <http://q> _:a ."),
                         ttl("<< _:x <http://p> _:y >> <http://q> _:x .")));
  EXPECT_FALSE(isomorphic(ttl("<< _:a <http://p> _:b >> <http://q> _:a ."),
                          ttl("<< _:x <http://p> _:y >> <http://q> _:y .")));
}

TEST(IsomorphismTest, GroundTriplesMustMatch) {
  EXPECT_FALSE(isomorphic(ttl("<http://a> <http://p> 1 ."), ttl("<http://a> <http://p> 2 .")));
  EXPECT_TRUE(isomorphic(Graph{}, Graph{}));
}

TEST(IsomorphismTest, ReturnedMappingIsAWitness) {
  Graph a = ttl("_:a <http://p> _:b . _:b <http://p> _:c . _:c <http://q> \"end\" .");
  Graph b = ttl("_:z <http://p> _:y . _:y <http://p> _:x . _:x <http://q> \"end\" .");
  auto m = findIsomorphism(a, b);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(renameBlankNodes(a, *m), b);
  EXPECT_EQ(m->at("a"), "z");
  EXPECT_EQ(m->at("c"), "x");
}

// Regular graphs where colour refinement alone cannot split the classes.
TEST(IsomorphismTest, CyclesNeedSearch) {
  Graph sixCycle = ttl(
      "_:a <http://p> _:b . _:b <http://p> _:c . _:c <http://p> _:d . "
      "_:d <http://p> _:e . _:e <http://p> _:f . _:f <http://p> _:a .");
  Graph twoTriangles = ttl(
      "_:a <http://p> _:b . _:b <http://p> _:c . _:c <http://p> _:a . "
      "_:d <http://p> _:e . _:e <http://p> _:f . _:f <http://p> _:d .");
  Graph shifted = ttl(
      "_:u <http://p> _:v . _:v <http://p> _:w . _:w <http://p> _:x . "
      "_:x <http://p> _:y . _:y <http://p> _:z . _:z <http://p> _:u .");
  EXPECT_FALSE(isomorphic(sixCycle, twoTriangles));
  EXPECT_TRUE(isomorphic(sixCycle, shifted));
  EXPECT_EQ(bruteForceIsomorphic(sixCycle, twoTriangles), false);
}

Graph shuffleBlanks(const Graph& g, std::mt19937_64& rng) {
  auto ids = blanksOf(g);
  auto targets = ids;
  for (auto& t : targets) t = "r_" + t;
  std::shuffle(targets.begin(), targets.end(), rng);
  BlankNodeMapping m;
  for (std::size_t i = 0; i < ids.size(); ++i) m[ids[i]] = targets[i];
  return renameBlankNodes(g, m);
}

TEST(IsomorphismProperty, AgreesWithBruteForce) {
  testing::RdfGenerator gen(99);
  std::mt19937_64 rng(5);
  int positives = 0;
  for (int i = 0; i < 300; ++i) {
    Graph a = gen.graph(6, 1);
    // Half the pairs are renamings of each other, the rest are independent draws.
    Graph b = (i % 2 == 0) ? shuffleBlanks(a, rng) : gen.graph(6, 1);
    bool expected = bruteForceIsomorphic(a, b);
    positives += expected;
    auto m = findIsomorphism(a, b);
    EXPECT_EQ(m.has_value(), expected) << serializeNTriplesStar(a) << "--\n"
                                       << serializeNTriplesStar(b);
    if (m) EXPECT_EQ(renameBlankNodes(a, *m), b);
  }
  EXPECT_GE(positives, 150);
}

TEST(IsomorphismProperty, ReflexiveAndSymmetric) {
  testing::RdfGenerator gen(1234);
  std::mt19937_64 rng(6);
  for (int i = 0; i < 100; ++i) {
    Graph a = gen.graph(15, 2);
    Graph b = shuffleBlanks(a, rng);
    Graph c = gen.graph(15, 2);
    EXPECT_TRUE(isomorphic(a, a));
    EXPECT_TRUE(isomorphic(a, b));
    EXPECT_TRUE(isomorphic(b, a));
    EXPECT_EQ(isomorphic(a, c), isomorphic(c, a));
  }
}

}  // namespace
}  // namespace prec::rdf
