#include "prec/rdf/term.hpp"

#include <cctype>

#include "prec/error.hpp"
#include "prec/rdf/vocab.hpp"

namespace prec::rdf {

namespace {

bool isAsciiAlpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool isAsciiDigit(char c) { return c >= '0' && c <= '9'; }

bool isValidLanguageTag(std::string_view tag) {
  // [a-zA-Z]+ ('-' [a-zA-Z0-9]+)*
  if (tag.empty() || !isAsciiAlpha(tag.front())) return false;
  bool segmentStart = false;
  bool primary = true;
  for (char c : tag) {
    if (c == '-') {
      if (segmentStart) return false;
      segmentStart = true;
      primary = false;
    } else if (isAsciiAlpha(c) || (!primary && isAsciiDigit(c))) {
      segmentStart = false;
    } else {
      return false;
    }
  }
  return !segmentStart;
}

}  // namespace

bool isAbsoluteIri(std::string_view iri) {
  if (iri.empty() || !isAsciiAlpha(iri.front())) return false;
  for (std::size_t i = 1; i < iri.size(); ++i) {
    char c = iri[i];
    if (c == ':') return true;
    if (!(isAsciiAlpha(c) || isAsciiDigit(c) || c == '+' || c == '-' || c == '.'))
      return false;
  }
  return false;
}

bool isValidBlankNodeId(std::string_view id) {
  if (id.empty() || id.back() == '.') return false;
  auto word = [](char c) { return isAsciiAlpha(c) || isAsciiDigit(c) || c == '_'; };
  if (!word(id.front())) return false;
  for (char c : id.substr(1)) {
    if (!(word(c) || c == '-' || c == '.')) return false;
  }
  return true;
}

std::string percentEncode(std::string_view raw) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(raw.size());
  for (unsigned char c : raw) {
    if (isAsciiAlpha(static_cast<char>(c)) || isAsciiDigit(static_cast<char>(c)) ||
        c == '-' || c == '.' || c == '_' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

bool QuotedTriple::operator==(const QuotedTriple& other) const {
  return triple == other.triple || *triple == *other.triple;
}

std::strong_ordering QuotedTriple::operator<=>(const QuotedTriple& other) const {
  if (triple == other.triple) return std::strong_ordering::equal;
  return *triple <=> *other.triple;
}

Term Term::iri(std::string value) {
  if (!isAbsoluteIri(value)) throw TermError("IRI is not absolute: <" + value + ">");
  return Term(Iri{std::move(value)});
}

Term Term::blank(std::string id) {
  if (!isValidBlankNodeId(id)) throw TermError("invalid blank node label: _:" + id);
  return Term(BlankNode{std::move(id)});
}

Term Term::literal(std::string lexical, std::string datatype) {
  if (!isAbsoluteIri(datatype))
    throw TermError("literal datatype is not absolute: <" + datatype + ">");
  if (datatype == vocab::kRdfLangString)
    throw TermError("rdf:langString literal requires a language tag");
  return Term(Literal{std::move(lexical), std::move(datatype), {}});
}

Term Term::langLiteral(std::string lexical, std::string language) {
  if (!isValidLanguageTag(language)) throw TermError("invalid language tag: @" + language);
  return Term(Literal{std::move(lexical), std::string(vocab::kRdfLangString),
                      std::move(language)});
}

Term Term::string(std::string lexical) {
  return Term(Literal{std::move(lexical), std::string(vocab::kXsdString), {}});
}

Term Term::quoted(Triple triple) {
  return Term(QuotedTriple{std::make_shared<const Triple>(std::move(triple))});
}

std::string_view Term::text() const {
  switch (kind()) {
    case TermKind::Iri: return asIri().value;
    case TermKind::BlankNode: return asBlank().id;
    case TermKind::Literal: return asLiteral().lexical;
    case TermKind::QuotedTriple: return {};
  }
  return {};
}

bool Term::hasBlankNode() const {
  if (isBlank()) return true;
  return isQuoted() && asQuoted().hasBlankNode();
}

std::strong_ordering Term::operator<=>(const Term& other) const {
  if (auto c = value_.index() <=> other.value_.index(); c != 0) return c;
  return std::visit(
      [&other](const auto& lhs) -> std::strong_ordering {
        using T = std::decay_t<decltype(lhs)>;
        return lhs <=> std::get<T>(other.value_);
      },
      value_);
}

Triple::Triple(Term subject, Term predicate, Term object)
    : subject_(std::move(subject)),
      predicate_(std::move(predicate)),
      object_(std::move(object)) {
  if (subject_.isLiteral()) throw TermError("literal in subject position");
  if (!predicate_.isIri()) throw TermError("predicate must be an IRI");
}

bool Triple::hasBlankNode() const {
  return subject_.hasBlankNode() || object_.hasBlankNode();
}

std::strong_ordering Triple::operator<=>(const Triple& other) const {
  if (auto c = subject_ <=> other.subject_; c != 0) return c;
  if (auto c = predicate_ <=> other.predicate_; c != 0) return c;
  return object_ <=> other.object_;
}

}  // namespace prec::rdf
