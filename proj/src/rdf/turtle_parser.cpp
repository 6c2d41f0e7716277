#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "prec/error.hpp"
#include "prec/rdf/turtle.hpp"
#include "prec/rdf/vocab.hpp"

namespace prec::rdf {

namespace {

bool isAlpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool isDigit(char c) { return c >= '0' && c <= '9'; }
bool isNonAscii(char c) { return static_cast<unsigned char>(c) >= 0x80; }
bool isNameChar(char c) {
  return isAlpha(c) || isDigit(c) || c == '_' || c == '-' || isNonAscii(c);
}

void appendUtf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::atomic<std::uint64_t> freshDocumentCounter{0};

class TurtleParser {
 public:
  TurtleParser(std::string_view text, const ParseOptions& options)
      : src_(text), base_(options.baseIri), freshen_(options.freshenBlankNodes) {
    if (freshen_) freshPrefix_ = "b" + std::to_string(++freshDocumentCounter) + "_";
  }

  Graph run() {
    while (true) {
      skipWs();
      if (atEnd()) break;
      if (peek() == '@') {
        atDirective();
      } else if (keywordAhead("PREFIX")) {
        advance(6);
        prefixBody(false);
      } else if (keywordAhead("BASE")) {
        advance(4);
        baseBody(false);
      } else {
        statement();
      }
    }
    return std::move(graph_);
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_, column_);
  }

  bool atEnd() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
      ++pos_;
    }
  }

  void skipWs() {
    while (!atEnd()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else if (c == '#') {
        while (!atEnd() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  void expect(char c, const char* what) {
    skipWs();
    if (peek() != c) fail(std::string("expected ") + what);
    advance();
  }

  // Case-insensitive keyword followed by whitespace.
  bool keywordAhead(std::string_view keyword) const {
    if (pos_ + keyword.size() >= src_.size()) return false;
    for (std::size_t i = 0; i < keyword.size(); ++i) {
      char c = src_[pos_ + i];
      if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
      if (c != keyword[i]) return false;
    }
    char after = src_[pos_ + keyword.size()];
    return after == ' ' || after == '\t' || after == '\n' || after == '\r';
  }

  void atDirective() {
    advance();
    if (src_.substr(pos_, 6) == "prefix") {
      advance(6);
      prefixBody(true);
    } else if (src_.substr(pos_, 4) == "base") {
      advance(4);
      baseBody(true);
    } else {
      fail("unknown directive");
    }
  }

  void prefixBody(bool needsDot) {
    skipWs();
    std::string name;
    while (!atEnd() && peek() != ':') {
      if (!isNameChar(peek()) && peek() != '.') fail("invalid prefix name");
      name.push_back(peek());
      advance();
    }
    if (atEnd()) fail("expected ':' after prefix name");
    if (!name.empty() && (!isAlpha(name.front()) || name.back() == '.'))
      fail("invalid prefix name '" + name + "'");
    advance();
    skipWs();
    if (peek() != '<') fail("expected IRI after prefix name");
    prefixes_[name] = iriRef();
    if (needsDot) expect('.', "'.' after @prefix directive");
  }

  void baseBody(bool needsDot) {
    skipWs();
    if (peek() != '<') fail("expected IRI after base directive");
    base_ = iriRef();
    if (needsDot) expect('.', "'.' after @base directive");
  }

  void statement() {
    Term subject = subjectTerm();
    predicateObjectList(subject);
    expect('.', "'.' at end of statement");
  }

  void predicateObjectList(const Term& subject) {
    while (true) {
      Term predicate = verb();
      while (true) {
        Term object = objectTerm();
        graph_.insert(Triple(subject, predicate, std::move(object)));
        skipWs();
        if (peek() != ',') break;
        advance();
      }
      skipWs();
      if (peek() != ';') return;
      while (peek() == ';') {
        advance();
        skipWs();
      }
      if (peek() == '.' || peek() == ']' || atEnd()) return;
    }
  }

  void rejectUnsupported() {
    char c = peek();
    if (c == '[')
      fail("anonymous blank nodes '[]' are not supported; use a named blank node such as _:b1");
    if (c == '(')
      fail("collections '( )' are not supported; write rdf:first/rdf:rest triples with named blank nodes");
  }

  Term subjectTerm() {
    skipWs();
    rejectUnsupported();
    char c = peek();
    if (c == '<' && peek(1) == '<') return quotedTriple();
    if (c == '"' || c == '\'' || isDigit(c) || c == '+' || c == '-')
      fail("literal in subject position");
    if (atEnd()) fail("unexpected end of input");
    return resourceTerm();
  }

  Term verb() {
    skipWs();
    char c = peek();
    if (c == '<' && peek(1) == '<') fail("quoted triple in predicate position");
    if (c == 'a' && !isNameChar(peek(1)) && peek(1) != ':' && peek(1) != '.')
    {
      advance();
      return Term::iri(std::string(vocab::kRdfType));
    }
    if (c == '_' && peek(1) == ':') fail("blank node in predicate position");
    if (c == '"' || c == '\'' || isDigit(c)) fail("literal in predicate position");
    rejectUnsupported();
    if (atEnd()) fail("unexpected end of input");
    return resourceTerm();
  }

  Term objectTerm() {
    skipWs();
    rejectUnsupported();
    char c = peek();
    if (c == '<' && peek(1) == '<') return quotedTriple();
    if (c == '"' || c == '\'') return literal();
    if (isDigit(c) || c == '+' || c == '-' || (c == '.' && isDigit(peek(1))))
      return numeric();
    if (atEnd()) fail("unexpected end of input");
    return resourceTerm();
  }

  // IRI, prefixed name or blank node.
  Term resourceTerm() {
    char c = peek();
    if (c == '<') return makeIri(iriRef());
    if (c == '_' && peek(1) == ':') return blankNode();
    return makeIri(prefixedName());
  }

  Term makeIri(std::string value) {
    try {
      return Term::iri(std::move(value));
    } catch (const TermError& e) {
      fail(e.what());
    }
  }

  Term quotedTriple() {
    advance(2);
    Term subject = subjectTerm();
    Term predicate = verb();
    Term object = objectTerm();
    skipWs();
    if (!(peek() == '>' && peek(1) == '>')) fail("expected '>>' to close quoted triple");
    advance(2);
    return Term::quoted(Triple(std::move(subject), std::move(predicate), std::move(object)));
  }

  std::uint32_t hexEscape(std::size_t digits) {
    std::uint32_t cp = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      char c = peek();
      cp <<= 4;
      if (isDigit(c)) cp |= static_cast<std::uint32_t>(c - '0');
      else if (c >= 'a' && c <= 'f') cp |= static_cast<std::uint32_t>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F') cp |= static_cast<std::uint32_t>(c - 'A' + 10);
      else fail("invalid hex digit in \\u escape");
      advance();
    }
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail("invalid code point in escape");
    return cp;
  }

  // Reads <...> and resolves it against the current base.
  std::string iriRef() {
    advance();
    std::string value;
    while (true) {
      if (atEnd()) fail("unterminated IRI");
      char c = peek();
      if (c == '>') break;
      if (c == '\\') {
        advance();
        if (peek() == 'u') {
          advance();
          appendUtf8(value, hexEscape(4));
        } else if (peek() == 'U') {
          advance();
          appendUtf8(value, hexEscape(8));
        } else {
          fail("invalid escape in IRI");
        }
        continue;
      }
      if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"' || c == '{' ||
          c == '}' || c == '|' || c == '^' || c == '`')
        fail("invalid character in IRI");
      value.push_back(c);
      advance();
    }
    advance();
    if (isAbsoluteIri(value)) return value;
    if (!base_) fail("relative IRI <" + value + "> with no base");
    return resolveIri(*base_, value);
  }

  std::string prefixedName() {
    const std::size_t startLine = line_, startColumn = column_;
    std::string prefix;
    while (!atEnd() && (isNameChar(peek()) || peek() == '.') && peek() != ':') {
      prefix.push_back(peek());
      advance();
    }
    if (peek() != ':') {
      if (prefix.empty()) fail(std::string("unexpected character '") + peek() + "'");
      fail("expected ':' in prefixed name '" + prefix + "'");
    }
    if (!prefix.empty() && (!isAlpha(prefix.front()) || prefix.back() == '.'))
      fail("invalid prefix '" + prefix + "'");
    auto ns = prefixes_.find(prefix);
    if (ns == prefixes_.end())
      throw ParseError("undefined prefix '" + prefix + ":'", startLine, startColumn);
    advance();
    std::string local;
    while (!atEnd()) {
      char c = peek();
      if (isNameChar(c) || c == ':' || c == '.') {
        local.push_back(c);
        advance();
      } else if (c == '%') {
        local.push_back(c);
        advance();
        for (int i = 0; i < 2; ++i) {
          char h = peek();
          if (!(isDigit(h) || (h >= 'a' && h <= 'f') || (h >= 'A' && h <= 'F')))
            fail("invalid percent escape in local name");
          local.push_back(h);
          advance();
        }
      } else if (c == '\\') {
        advance();
        char e = peek();
        if (std::string_view("_~.-!$&'()*+,;=/?#@%").find(e) == std::string_view::npos)
          fail("invalid escape in local name");
        local.push_back(e);
        advance();
      } else {
        break;
      }
    }
    // A trailing '.' terminates the statement; give it back.
    while (!local.empty() && local.back() == '.') {
      local.pop_back();
      --pos_;
      --column_;
    }
    return ns->second + local;
  }

  Term blankNode() {
    advance(2);
    std::string label;
    while (!atEnd() && (isNameChar(peek()) || peek() == '.')) {
      label.push_back(peek());
      advance();
    }
    while (!label.empty() && label.back() == '.') {
      label.pop_back();
      --pos_;
      --column_;
    }
    if (!isValidBlankNodeId(label)) fail("invalid blank node label '_:" + label + "'");
    if (!freshen_) return Term::blank(std::move(label));
    auto [it, inserted] = freshLabels_.try_emplace(label);
    if (inserted) it->second = freshPrefix_ + label;
    return Term::blank(it->second);
  }

  Term literal() {
    char quote = peek();
    if (peek(1) == quote && peek(2) == quote) fail("multi-line (triple-quoted) strings are not supported");
    advance();
    std::string lexical;
    while (true) {
      if (atEnd()) fail("unterminated string literal");
      char c = peek();
      if (c == quote) break;
      if (c == '\n' || c == '\r') fail("line break in string literal");
      if (c == '\\') {
        advance();
        char e = peek();
        advance();
        switch (e) {
          case 't': lexical.push_back('\t'); break;
          case 'b': lexical.push_back('\b'); break;
          case 'n': lexical.push_back('\n'); break;
          case 'r': lexical.push_back('\r'); break;
          case 'f': lexical.push_back('\f'); break;
          case '"': lexical.push_back('"'); break;
          case '\'': lexical.push_back('\''); break;
          case '\\': lexical.push_back('\\'); break;
          case 'u': appendUtf8(lexical, hexEscape(4)); break;
          case 'U': appendUtf8(lexical, hexEscape(8)); break;
          default: fail("invalid escape in string literal");
        }
        continue;
      }
      lexical.push_back(c);
      advance();
    }
    advance();
    if (peek() == '@') {
      advance();
      std::string language;
      while (!atEnd() && (isAlpha(peek()) || isDigit(peek()) || peek() == '-')) {
        language.push_back(peek());
        advance();
      }
      try {
        return Term::langLiteral(std::move(lexical), std::move(language));
      } catch (const TermError& e) {
        fail(e.what());
      }
    }
    if (peek() == '^' && peek(1) == '^') {
      advance(2);
      std::string datatype = peek() == '<' ? iriRef() : prefixedName();
      try {
        return Term::literal(std::move(lexical), std::move(datatype));
      } catch (const TermError& e) {
        fail(e.what());
      }
    }
    return Term::string(std::move(lexical));
  }

  Term numeric() {
    std::string lexical;
    if (peek() == '+' || peek() == '-') {
      lexical.push_back(peek());
      advance();
    }
    while (isDigit(peek())) {
      lexical.push_back(peek());
      advance();
    }
    bool decimal = false;
    if (peek() == '.' && isDigit(peek(1))) {
      decimal = true;
      lexical.push_back('.');
      advance();
      while (isDigit(peek())) {
        lexical.push_back(peek());
        advance();
      }
    }
    bool exponent = false;
    if ((peek() == 'e' || peek() == 'E') &&
        (isDigit(peek(1)) || ((peek(1) == '+' || peek(1) == '-') && isDigit(peek(2))))) {
      exponent = true;
      lexical.push_back(peek());
      advance();
      if (peek() == '+' || peek() == '-') {
        lexical.push_back(peek());
        advance();
      }
      while (isDigit(peek())) {
        lexical.push_back(peek());
        advance();
      }
    }
    bool hasDigit = lexical.find_first_of("0123456789") != std::string::npos;
    if (!hasDigit) fail("invalid numeric literal");
    std::string_view datatype = exponent  ? vocab::kXsdDouble
                                : decimal ? vocab::kXsdDecimal
                                          : vocab::kXsdInteger;
    return Term::literal(std::move(lexical), std::string(datatype));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  std::optional<std::string> base_;
  std::map<std::string, std::string> prefixes_;
  bool freshen_;
  std::string freshPrefix_;
  std::map<std::string, std::string> freshLabels_;
  Graph graph_;
};

struct IriParts {
  std::optional<std::string_view> scheme;
  std::optional<std::string_view> authority;
  std::string_view path;
  std::optional<std::string_view> query;
  std::optional<std::string_view> fragment;
};

IriParts splitIri(std::string_view iri) {
  IriParts parts;
  if (auto hash = iri.find('#'); hash != std::string_view::npos) {
    parts.fragment = iri.substr(hash + 1);
    iri = iri.substr(0, hash);
  }
  if (auto q = iri.find('?'); q != std::string_view::npos) {
    parts.query = iri.substr(q + 1);
    iri = iri.substr(0, q);
  }
  if (auto colon = iri.find(':'); colon != std::string_view::npos &&
                                  iri.substr(0, colon).find('/') == std::string_view::npos &&
                                  isAbsoluteIri(iri)) {
    parts.scheme = iri.substr(0, colon);
    iri = iri.substr(colon + 1);
  }
  if (iri.starts_with("//")) {
    iri = iri.substr(2);
    auto slash = iri.find('/');
    parts.authority = iri.substr(0, slash);
    iri = slash == std::string_view::npos ? std::string_view{} : iri.substr(slash);
  }
  parts.path = iri;
  return parts;
}

std::string removeDotSegments(std::string_view input) {
  std::string in(input);
  std::string out;
  while (!in.empty()) {
    if (in.starts_with("../")) {
      in.erase(0, 3);
    } else if (in.starts_with("./")) {
      in.erase(0, 2);
    } else if (in.starts_with("/./")) {
      in.erase(0, 2);
    } else if (in == "/.") {
      in = "/";
    } else if (in.starts_with("/../") || in == "/..") {
      in = in == "/.." ? "/" : in.substr(3);
      auto slash = out.rfind('/');
      out.erase(slash == std::string::npos ? 0 : slash);
    } else if (in == "." || in == "..") {
      in.clear();
    } else {
      auto next = in.find('/', in.front() == '/' ? 1 : 0);
      out += in.substr(0, next);
      in.erase(0, next == std::string::npos ? in.size() : next);
    }
  }
  return out;
}

}  // namespace

std::string resolveIri(std::string_view base, std::string_view reference) {
  IriParts r = splitIri(reference);
  IriParts b = splitIri(base);
  std::string scheme, authority, path, query;
  bool hasAuthority = false, hasQuery = false;
  if (r.scheme) {
    scheme = *r.scheme;
    hasAuthority = r.authority.has_value();
    if (hasAuthority) authority = *r.authority;
    path = removeDotSegments(r.path);
    hasQuery = r.query.has_value();
    if (hasQuery) query = *r.query;
  } else {
    scheme = b.scheme.value_or("");
    if (r.authority) {
      hasAuthority = true;
      authority = *r.authority;
      path = removeDotSegments(r.path);
      hasQuery = r.query.has_value();
      if (hasQuery) query = *r.query;
    } else {
      hasAuthority = b.authority.has_value();
      if (hasAuthority) authority = *b.authority;
      if (r.path.empty()) {
        path = b.path;
        if (r.query) {
          hasQuery = true;
          query = *r.query;
        } else if (b.query) {
          hasQuery = true;
          query = *b.query;
        }
      } else {
        if (r.path.front() == '/') {
          path = removeDotSegments(r.path);
        } else {
          std::string merged;
          if (b.authority && b.path.empty()) {
            merged = "/" + std::string(r.path);
          } else {
            auto slash = b.path.rfind('/');
            merged = slash == std::string_view::npos
                         ? std::string(r.path)
                         : std::string(b.path.substr(0, slash + 1)) + std::string(r.path);
          }
          path = removeDotSegments(merged);
        }
        hasQuery = r.query.has_value();
        if (hasQuery) query = *r.query;
      }
    }
  }
  std::string out = scheme + ":";
  if (hasAuthority) out += "//" + authority;
  out += path;
  if (hasQuery) out += "?" + query;
  if (r.fragment) out += "#" + std::string(*r.fragment);
  return out;
}

Graph parseTurtleStar(std::string_view text, const ParseOptions& options) {
  return TurtleParser(text, options).run();
}

}  // namespace prec::rdf
