#include <algorithm>
#include <cstdio>
#include <regex>
#include <string>
#include <vector>

#include "prec/rdf/turtle.hpp"
#include "prec/rdf/vocab.hpp"

namespace prec::rdf {

namespace {

void appendUnicodeEscape(std::string& out, unsigned char c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "\\u%04X", c);
  out += buf;
}

std::string escapeIri(std::string_view iri) {
  std::string out;
  out.reserve(iri.size());
  for (char ch : iri) {
    auto c = static_cast<unsigned char>(ch);
    if (c <= 0x20 || ch == '<' || ch == '>' || ch == '"' || ch == '{' || ch == '}' ||
        ch == '|' || ch == '^' || ch == '`' || ch == '\\') {
      appendUnicodeEscape(out, c);
    } else {
      out.push_back(ch);
    }
  }
  return out;
}

std::string escapeString(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  out.push_back('"');
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20 || ch == 0x7F) {
          appendUnicodeEscape(out, static_cast<unsigned char>(ch));
        } else {
          out.push_back(ch);
        }
    }
  }
  out.push_back('"');
  return out;
}

class TurtleWriter {
 public:
  explicit TurtleWriter(const PrefixMap& prefixes) : prefixes_(prefixes) {}

  std::string iri(std::string_view value) const {
    std::string_view bestPrefix;
    std::size_t bestLength = 0;
    bool found = false;
    for (const auto& [name, ns] : prefixes_) {
      if (ns.size() < bestLength || !value.starts_with(ns)) continue;
      if (!isSimpleLocal(value.substr(ns.size()))) continue;
      bestPrefix = name;
      bestLength = ns.size();
      found = true;
    }
    if (found) return std::string(bestPrefix) + ":" + std::string(value.substr(bestLength));
    return "<" + escapeIri(value) + ">";
  }

  std::string term(const Term& t) const {
    switch (t.kind()) {
      case TermKind::Iri: return iri(t.asIri().value);
      case TermKind::BlankNode: return "_:" + t.asBlank().id;
      case TermKind::Literal: return literal(t.asLiteral());
      case TermKind::QuotedTriple: {
        const Triple& q = t.asQuoted();
        return "<< " + term(q.subject()) + " " + predicate(q.predicate()) + " " +
               term(q.object()) + " >>";
      }
    }
    return {};
  }

  std::string predicate(const Term& t) const {
    if (t.isIri() && t.asIri().value == vocab::kRdfType) return "a";
    return term(t);
  }

 private:
  static bool isSimpleLocal(std::string_view local) {
    if (local.empty()) return true;
    auto word = [](char c) {
      return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
             c == '_';
    };
    if (!word(local.front())) return false;
    return std::all_of(local.begin(), local.end(),
                       [&](char c) { return word(c) || c == '-'; });
  }

  std::string literal(const Literal& lit) const {
    static const std::regex integer("[+-]?[0-9]+");
    static const std::regex decimal("[+-]?[0-9]*\\.[0-9]+");
    if (lit.datatype == vocab::kXsdInteger && std::regex_match(lit.lexical, integer))
      return lit.lexical;
    if (lit.datatype == vocab::kXsdDecimal && std::regex_match(lit.lexical, decimal))
      return lit.lexical;
    std::string out = escapeString(lit.lexical);
    if (!lit.language.empty()) return out + "@" + lit.language;
    if (lit.datatype == vocab::kXsdString) return out;
    return out + "^^" + iri(lit.datatype);
  }

  const PrefixMap& prefixes_;
};

}  // namespace

std::string toNTriples(const Term& term) {
  switch (term.kind()) {
    case TermKind::Iri: return "<" + escapeIri(term.asIri().value) + ">";
    case TermKind::BlankNode: return "_:" + term.asBlank().id;
    case TermKind::Literal: {
      const Literal& lit = term.asLiteral();
      std::string out = escapeString(lit.lexical);
      if (!lit.language.empty()) return out + "@" + lit.language;
      if (lit.datatype == vocab::kXsdString) return out;
      return out + "^^<" + escapeIri(lit.datatype) + ">";
    }
    case TermKind::QuotedTriple: return "<< " + toNTriples(term.asQuoted()) + " >>";
  }
  return {};
}

std::string toNTriples(const Triple& triple) {
  return toNTriples(triple.subject()) + " " + toNTriples(triple.predicate()) + " " +
         toNTriples(triple.object());
}

std::string serializeNTriplesStar(const Graph& graph) {
  std::vector<std::string> lines;
  lines.reserve(graph.size());
  for (const auto& t : graph) lines.push_back(toNTriples(t) + " .\n");
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& line : lines) out += line;
  return out;
}

std::string serializeTurtleStar(const Graph& graph, const PrefixMap& prefixes) {
  TurtleWriter writer(prefixes);
  std::string out;
  for (const auto& [name, ns] : prefixes) {
    out += "@prefix " + name + ": <" + escapeIri(ns) + "> .\n";
  }
  if (!prefixes.empty() && !graph.empty()) out += "\n";

  // Graph iteration is ordered by subject, then predicate.
  const Term* subject = nullptr;
  const Term* predicate = nullptr;
  for (const auto& t : graph) {
    if (subject && *subject == t.subject()) {
      if (*predicate == t.predicate()) {
        out += ", ";
      } else {
        out += " ;\n    " + writer.predicate(t.predicate()) + " ";
      }
    } else {
      if (subject) out += " .\n";
      out += writer.term(t.subject()) + " " + writer.predicate(t.predicate()) + " ";
    }
    out += writer.term(t.object());
    subject = &t.subject();
    predicate = &t.predicate();
  }
  if (subject) out += " .\n";
  return out;
}

}  // namespace prec::rdf
