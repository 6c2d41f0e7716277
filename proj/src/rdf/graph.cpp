#include "prec/rdf/graph.hpp"

#include <ranges>
#include <utility>

namespace prec::rdf {

std::vector<Triple> Graph::bySubject(const Term& subject) const {
  auto [first, last] = triples_.equal_range(subject);
  return {first, last};
}

std::vector<Triple> Graph::match(const std::optional<Term>& subject,
                                 const std::optional<Term>& predicate,
                                 const std::optional<Term>& object) const {
  std::vector<Triple> out;
  auto [first, last] = subject ? triples_.equal_range(*subject)
                               : std::pair{triples_.begin(), triples_.end()};
  for (const auto& t : std::ranges::subrange(first, last)) {
    if (subject && t.subject() != *subject) continue;
    if (predicate && t.predicate() != *predicate) continue;
    if (object && t.object() != *object) continue;
    out.push_back(t);
  }
  return out;
}

}  // namespace prec::rdf
