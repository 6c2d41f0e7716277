#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <set>
#include <vector>

#include "prec/rdf/term.hpp"

namespace prec::rdf {

// A set of RDF-star triples, ordered by Triple's total order.
class Graph {
  // Orders triples and allows subject-only lookups.
  struct Less {
    using is_transparent = void;
    bool operator()(const Triple& a, const Triple& b) const { return a < b; }
    bool operator()(const Triple& a, const Term& s) const { return a.subject() < s; }
    bool operator()(const Term& s, const Triple& b) const { return s < b.subject(); }
  };

 public:
  using const_iterator = std::set<Triple, Less>::const_iterator;

  Graph() = default;
  Graph(std::initializer_list<Triple> triples) : triples_(triples) {}

  // Returns false if the triple was already present.
  bool insert(Triple triple) { return triples_.insert(std::move(triple)).second; }
  bool erase(const Triple& triple) { return triples_.erase(triple) > 0; }
  void merge(const Graph& other) { triples_.insert(other.begin(), other.end()); }

  bool contains(const Triple& triple) const { return triples_.contains(triple); }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }

  const_iterator begin() const { return triples_.begin(); }
  const_iterator end() const { return triples_.end(); }

  // Triples with the given subject, in order.
  std::vector<Triple> bySubject(const Term& subject) const;

  // Unset positions match anything. Linear unless the subject is set.
  std::vector<Triple> match(const std::optional<Term>& subject,
                            const std::optional<Term>& predicate,
                            const std::optional<Term>& object) const;

  bool operator==(const Graph&) const = default;

 private:
  std::set<Triple, Less> triples_;
};

}  // namespace prec::rdf
