#include "prec/rdf/isomorphism.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <unordered_map>
#include <vector>

#include "prec/rdf/turtle.hpp"

namespace prec::rdf {

namespace {

using Color = std::uint64_t;

Color mix(Color seed, Color value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

void collectBlanks(const Term& term, std::set<std::string>& out) {
  if (term.isBlank()) out.insert(term.asBlank().id);
  if (term.isQuoted()) {
    collectBlanks(term.asQuoted().subject(), out);
    collectBlanks(term.asQuoted().object(), out);
  }
}

// The non-ground part of a graph, indexed by blank node.
struct Side {
  std::vector<Triple> triples;
  std::vector<std::string> blanks;
  std::unordered_map<std::string, std::size_t> index;
  // For each blank node: the triples mentioning it.
  std::vector<std::vector<std::size_t>> occurrences;
  // For each triple: the blank nodes it mentions.
  std::vector<std::vector<std::size_t>> members;
  std::vector<Color> colors;

  explicit Side(const Graph& g) {
    std::set<std::string> ids;
    for (const auto& t : g) {
      if (!t.hasBlankNode()) continue;
      triples.push_back(t);
    }
    for (const auto& t : triples) {
      collectBlanks(t.subject(), ids);
      collectBlanks(t.object(), ids);
    }
    blanks.assign(ids.begin(), ids.end());
    for (std::size_t i = 0; i < blanks.size(); ++i) index[blanks[i]] = i;
    occurrences.resize(blanks.size());
    members.resize(triples.size());
    for (std::size_t ti = 0; ti < triples.size(); ++ti) {
      std::set<std::string> local;
      collectBlanks(triples[ti].subject(), local);
      collectBlanks(triples[ti].object(), local);
      for (const auto& id : local) {
        occurrences[index[id]].push_back(ti);
        members[ti].push_back(index[id]);
      }
    }
    colors.assign(blanks.size(), 0);
  }

  // Serializes a term with blank nodes replaced by colour tokens; `self`
  // gets a distinguished token.
  void signature(const Term& term, std::size_t self, bool useColors, std::string& out) const {
    switch (term.kind()) {
      case TermKind::BlankNode: {
        std::size_t i = index.at(term.asBlank().id);
        if (i == self) {
          out += "S";
        } else if (useColors) {
          out += "B" + std::to_string(colors[i]);
        } else {
          out += "B";
        }
        break;
      }
      case TermKind::QuotedTriple: {
        const Triple& q = term.asQuoted();
        out += "<<";
        signature(q.subject(), self, useColors, out);
        out += " " + toNTriples(q.predicate()) + " ";
        signature(q.object(), self, useColors, out);
        out += ">>";
        break;
      }
      default:
        out += toNTriples(term);
    }
  }

  std::vector<Color> refineOnce(bool useColors) const {
    std::vector<Color> next(blanks.size());
    std::hash<std::string> hasher;
    for (std::size_t b = 0; b < blanks.size(); ++b) {
      std::vector<Color> parts;
      for (std::size_t ti : occurrences[b]) {
        std::string sig;
        signature(triples[ti].subject(), b, useColors, sig);
        sig += " " + toNTriples(triples[ti].predicate()) + " ";
        signature(triples[ti].object(), b, useColors, sig);
        parts.push_back(hasher(sig));
      }
      std::sort(parts.begin(), parts.end());
      Color c = useColors ? colors[b] : 0x51ed270b27c3ULL;
      for (Color p : parts) c = mix(c, p);
      next[b] = c;
    }
    return next;
  }

  std::size_t classCount() const {
    return std::set<Color>(colors.begin(), colors.end()).size();
  }
};

std::multiset<Color> colorMultiset(const Side& s) {
  return {s.colors.begin(), s.colors.end()};
}

class Matcher {
 public:
  Matcher(const Side& a, const Side& b, const Graph& bGraph)
      : a_(a), b_(b), bGraph_(bGraph), forward_(a.blanks.size(), kUnset),
        used_(b.blanks.size(), false) {
    for (std::size_t i = 0; i < b.blanks.size(); ++i) byColor_[b.colors[i]].push_back(i);
    order_.resize(a.blanks.size());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t x, std::size_t y) {
      return byColor_[a.colors[x]].size() < byColor_[a.colors[y]].size();
    });
  }

  bool search(std::size_t depth = 0) {
    if (depth == order_.size()) return true;
    std::size_t node = order_[depth];
    for (std::size_t candidate : byColor_[a_.colors[node]]) {
      if (used_[candidate]) continue;
      forward_[node] = candidate;
      used_[candidate] = true;
      if (consistent(node) && search(depth + 1)) return true;
      forward_[node] = kUnset;
      used_[candidate] = false;
    }
    return false;
  }

  BlankNodeMapping mapping() const {
    BlankNodeMapping out;
    for (std::size_t i = 0; i < forward_.size(); ++i)
      out[a_.blanks[i]] = b_.blanks[forward_[i]];
    return out;
  }

 private:
  static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

  Term map(const Term& term) const {
    if (term.isBlank())
      return Term::blank(b_.blanks[forward_[a_.index.at(term.asBlank().id)]]);
    if (term.isQuoted()) {
      const Triple& q = term.asQuoted();
      return Term::quoted(Triple(map(q.subject()), q.predicate(), map(q.object())));
    }
    return term;
  }

  bool consistent(std::size_t node) const {
    for (std::size_t ti : a_.occurrences[node]) {
      bool complete = std::all_of(a_.members[ti].begin(), a_.members[ti].end(),
                                  [&](std::size_t m) { return forward_[m] != kUnset; });
      if (!complete) continue;
      const Triple& t = a_.triples[ti];
      if (!bGraph_.contains(Triple(map(t.subject()), t.predicate(), map(t.object()))))
        return false;
    }
    return true;
  }

  const Side& a_;
  const Side& b_;
  const Graph& bGraph_;
  std::vector<std::size_t> forward_;
  std::vector<bool> used_;
  std::vector<std::size_t> order_;
  std::unordered_map<Color, std::vector<std::size_t>> byColor_;
};

}  // namespace

std::optional<BlankNodeMapping> findIsomorphism(const Graph& a, const Graph& b) {
  if (a.size() != b.size()) return std::nullopt;
  for (const auto& t : a) {
    if (!t.hasBlankNode() && !b.contains(t)) return std::nullopt;
  }
  Side sa(a);
  Side sb(b);
  if (sa.triples.size() != sb.triples.size() || sa.blanks.size() != sb.blanks.size())
    return std::nullopt;

  sa.colors = sa.refineOnce(false);
  sb.colors = sb.refineOnce(false);
  for (std::size_t round = 0; round < sa.blanks.size(); ++round) {
    if (colorMultiset(sa) != colorMultiset(sb)) return std::nullopt;
    std::size_t before = sa.classCount() + sb.classCount();
    auto nextA = sa.refineOnce(true);
    auto nextB = sb.refineOnce(true);
    sa.colors = std::move(nextA);
    sb.colors = std::move(nextB);
    if (sa.classCount() + sb.classCount() == before) break;
  }
  if (colorMultiset(sa) != colorMultiset(sb)) return std::nullopt;

  Matcher matcher(sa, sb, b);
  if (!matcher.search()) return std::nullopt;
  return matcher.mapping();
}

Term renameBlankNodes(const Term& term, const BlankNodeMapping& mapping) {
  if (term.isBlank()) {
    auto it = mapping.find(term.asBlank().id);
    return it == mapping.end() ? term : Term::blank(it->second);
  }
  if (term.isQuoted()) return Term::quoted(renameBlankNodes(term.asQuoted(), mapping));
  return term;
}

Triple renameBlankNodes(const Triple& triple, const BlankNodeMapping& mapping) {
  return Triple(renameBlankNodes(triple.subject(), mapping), triple.predicate(),
                renameBlankNodes(triple.object(), mapping));
}

Graph renameBlankNodes(const Graph& graph, const BlankNodeMapping& mapping) {
  Graph out;
  for (const auto& t : graph) out.insert(renameBlankNodes(t, mapping));
  return out;
}

}  // namespace prec::rdf
