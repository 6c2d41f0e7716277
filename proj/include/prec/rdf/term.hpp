#pragma once

#include <compare>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

namespace prec::rdf {

class Triple;

struct Iri {
  std::string value;
  auto operator<=>(const Iri&) const = default;
};

struct BlankNode {
  std::string id;
  auto operator<=>(const BlankNode&) const = default;
};

struct Literal {
  std::string lexical;
  std::string datatype;
  // Empty unless datatype is rdf:langString.
  std::string language;
  auto operator<=>(const Literal&) const = default;
};

// A triple used as a term. Shares an immutable Triple; compares by value.
struct QuotedTriple {
  std::shared_ptr<const Triple> triple;

  bool operator==(const QuotedTriple& other) const;
  std::strong_ordering operator<=>(const QuotedTriple& other) const;
};

enum class TermKind { Iri, BlankNode, Literal, QuotedTriple };

// An RDF-star term. Construct through the static factories, which enforce
// the value invariants (absolute IRIs, valid blank node labels, language
// tags only on rdf:langString literals).
class Term {
 public:
  static Term iri(std::string value);
  static Term blank(std::string id);
  static Term literal(std::string lexical, std::string datatype);
  static Term langLiteral(std::string lexical, std::string language);
  static Term string(std::string lexical);
  static Term quoted(Triple triple);

  TermKind kind() const { return static_cast<TermKind>(value_.index()); }
  bool isIri() const { return kind() == TermKind::Iri; }
  bool isBlank() const { return kind() == TermKind::BlankNode; }
  bool isLiteral() const { return kind() == TermKind::Literal; }
  bool isQuoted() const { return kind() == TermKind::QuotedTriple; }

  const Iri& asIri() const { return std::get<Iri>(value_); }
  const BlankNode& asBlank() const { return std::get<BlankNode>(value_); }
  const Literal& asLiteral() const { return std::get<Literal>(value_); }
  const Triple& asQuoted() const { return *std::get<QuotedTriple>(value_).triple; }

  // IRI string, blank node id or lexical form; empty for quoted triples.
  std::string_view text() const;

  // True if the term is, or transitively contains, a blank node.
  bool hasBlankNode() const;

  bool operator==(const Term&) const = default;
  std::strong_ordering operator<=>(const Term& other) const;

 private:
  using Value = std::variant<Iri, BlankNode, Literal, QuotedTriple>;
  explicit Term(Value value) : value_(std::move(value)) {}
  Value value_;
};

// subject: Iri | BlankNode | QuotedTriple; predicate: Iri; object: any.
class Triple {
 public:
  Triple(Term subject, Term predicate, Term object);

  const Term& subject() const { return subject_; }
  const Term& predicate() const { return predicate_; }
  const Term& object() const { return object_; }

  bool hasBlankNode() const;

  bool operator==(const Triple&) const = default;
  std::strong_ordering operator<=>(const Triple& other) const;

 private:
  Term subject_;
  Term predicate_;
  Term object_;
};

// Scheme followed by ':' (RFC 3986 scheme syntax).
bool isAbsoluteIri(std::string_view iri);

// Labels usable after "_:" in N-Triples: [A-Za-z0-9_] then [A-Za-z0-9_.-]*,
// not ending in '.'.
bool isValidBlankNodeId(std::string_view id);

// Percent-encodes every byte outside the RFC 3986 unreserved set.
std::string percentEncode(std::string_view raw);

}  // namespace prec::rdf
