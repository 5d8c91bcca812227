#include "flavokg/turtle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "flavokg/error.hpp"

namespace flavokg {
namespace {

const std::string kRdfType = std::string(kRdf) + "type";
const std::string kRdfsLabel = std::string(kRdfs) + "label";
const std::string kRdfsSubClassOf = std::string(kRdfs) + "subClassOf";
const std::string kOwlClass = std::string(kOwl) + "Class";

std::string escape_iri(std::string_view iri) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out = "<";
  for (char ch : iri) {
    auto c = static_cast<unsigned char>(ch);
    if (c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' ||
        c == '|' || c == '^' || c == '`' || c == '\\') {
      out += "\\u00";
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    } else {
      out.push_back(ch);
    }
  }
  out.push_back('>');
  return out;
}

std::string escape_literal(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out = "\"";
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    switch (ch) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20 || c == 0x7f) {
          out += "\\u00";
          out.push_back(kHex[c >> 4]);
          out.push_back(kHex[c & 0xF]);
        } else {
          out.push_back(ch);
        }
    }
  }
  out.push_back('"');
  return out;
}

int predicate_rank(const std::string& iri) {
  if (iri == kRdfType) return 0;
  if (iri == kRdfsLabel) return 1;
  if (iri == kRdfsSubClassOf) return 2;
  return 3;
}

struct Object {
  bool literal;
  std::string value;
  auto operator<=>(const Object&) const = default;
};

}  // namespace

std::string serialize_turtle(const OwlDocument& doc, const PrefixMap& prefixes) {
  PrefixMap effective = prefixes;
  effective.add_missing(PrefixMap::standard());

  std::string out;
  for (const auto& [prefix, base] : effective.entries()) {
    out += "@prefix " + prefix + ": " + escape_iri(base) + " .\n";
  }

  // subject -> predicate -> objects; std::map keeps subjects in IRI order.
  std::map<std::string, std::map<std::string, std::set<Object>>> triples;
  for (const auto& a : doc) {
    switch (a.kind) {
      case AxiomKind::class_declaration:
        triples[a.subject][kRdfType].insert({false, kOwlClass});
        break;
      case AxiomKind::label:
        triples[a.subject][kRdfsLabel].insert({true, a.object});
        break;
      case AxiomKind::subclass_of:
        triples[a.subject][kRdfsSubClassOf].insert({false, a.object});
        break;
      case AxiomKind::annotation:
        triples[a.subject][a.property].insert({true, a.object});
        break;
      case AxiomKind::relation:
        triples[a.subject][a.property].insert({false, a.object});
        break;
    }
  }

  auto term = [&](const std::string& iri) {
    if (auto curie = effective.compact(iri)) return *curie;
    return escape_iri(iri);
  };

  for (const auto& [subject, predicates] : triples) {
    std::vector<const std::pair<const std::string, std::set<Object>>*> ordered;
    for (const auto& entry : predicates) ordered.push_back(&entry);
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
      return std::make_tuple(predicate_rank(a->first), std::cref(a->first)) <
             std::make_tuple(predicate_rank(b->first), std::cref(b->first));
    });
    out += "\n" + term(subject);
    bool first = true;
    for (const auto* entry : ordered) {
      std::string predicate = entry->first == kRdfType ? "a" : term(entry->first);
      for (const auto& object : entry->second) {
        out += first ? " " : " ;\n    ";
        first = false;
        out += predicate + " " + (object.literal ? escape_literal(object.value) : term(object.value));
      }
    }
    out += " .\n";
  }
  return out;
}

namespace {

class TurtleReader {
 public:
  TurtleReader(std::string_view text, std::string_view file) : text_(text), file_(file) {}

  ParsedTurtle read() {
    ParsedTurtle result;
    while (true) {
      skip_ws();
      if (at_end()) break;
      if (peek() == '@' || starts_with_keyword("PREFIX")) {
        read_prefix(result.prefixes);
        continue;
      }
      std::string subject = read_iri_term(result.prefixes);
      read_predicate_objects(subject, result);
      expect('.');
    }
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(file_, line_, message);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!at_end()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
      } else if (c == '#') {
        while (!at_end() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool starts_with_keyword(std::string_view keyword) const {
    if (text_.size() - pos_ < keyword.size()) return false;
    for (std::size_t i = 0; i < keyword.size(); ++i) {
      char c = text_[pos_ + i];
      if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 32);
      if (c != keyword[i]) return false;
    }
    std::size_t after = pos_ + keyword.size();
    return after >= text_.size() || text_[after] == ' ' || text_[after] == '\t';
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string read_name() {
    std::size_t start = pos_;
    while (!at_end()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == ';' || c == ',' ||
          c == '<' || c == '"' || c == '#') {
        break;
      }
      ++pos_;
    }
    // A trailing '.' terminates the statement rather than the name.
    while (pos_ > start && text_[pos_ - 1] == '.') --pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void read_prefix(PrefixMap& prefixes) {
    bool sparql = peek() != '@';
    if (sparql) {
      pos_ += 6;
    } else {
      ++pos_;
      if (read_name() != "prefix") fail("unsupported directive");
    }
    skip_ws();
    std::string name = read_name();
    if (name.empty() || name.back() != ':') fail("expected prefix name");
    name.pop_back();
    skip_ws();
    std::string base = read_iriref();
    try {
      prefixes.add(name, base);
    } catch (const Error& e) {
      fail(e.what());
    }
    if (!sparql) expect('.');
  }

  static int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
  }

  void append_code_point(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp <= 0x10FFFF) {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      fail("code point out of range");
    }
  }

  void read_uchar(std::string& out) {
    char kind = peek();
    std::size_t digits = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
    if (digits == 0) fail("bad escape");
    ++pos_;
    std::uint32_t cp = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      int v = hex_value(peek());
      if (v < 0) fail("bad unicode escape");
      cp = cp * 16 + static_cast<std::uint32_t>(v);
      ++pos_;
    }
    append_code_point(out, cp);
  }

  std::string read_iriref() {
    if (peek() != '<') fail("expected '<'");
    ++pos_;
    std::string out;
    while (true) {
      if (at_end()) fail("unterminated IRI");
      char c = text_[pos_];
      if (c == '>') {
        ++pos_;
        return out;
      }
      if (c == '\n' || c == ' ') fail("whitespace in IRI");
      if (c == '\\') {
        ++pos_;
        read_uchar(out);
        continue;
      }
      out.push_back(c);
      ++pos_;
    }
  }

  std::string read_iri_term(const PrefixMap& prefixes) {
    skip_ws();
    if (peek() == '<') return read_iriref();
    if (peek() == '_' || peek() == '[' || peek() == '(') fail("blank nodes and collections are not supported");
    std::string name = read_name();
    if (name.empty()) fail("expected an IRI");
    std::size_t colon = name.find(':');
    if (colon == std::string::npos) fail("expected a prefixed name, got '" + name + "'");
    auto iri = prefixes.expand(name);
    if (!iri) fail("undeclared prefix '" + name.substr(0, colon) + "'");
    // Percent escapes stay as written; backslash escapes are dropped.
    std::string out;
    for (std::size_t i = 0; i < iri->size(); ++i) {
      if ((*iri)[i] == '\\' && i + 1 < iri->size()) ++i;
      out.push_back((*iri)[i]);
    }
    return out;
  }

  std::string read_literal() {
    ++pos_;  // opening quote
    std::string out;
    while (true) {
      if (at_end()) fail("unterminated string literal");
      char c = text_[pos_];
      if (c == '"') {
        ++pos_;
        break;
      }
      if (c == '\n') fail("newline in string literal");
      if (c == '\\') {
        ++pos_;
        char e = peek();
        switch (e) {
          case 't': out.push_back('\t'); ++pos_; break;
          case 'n': out.push_back('\n'); ++pos_; break;
          case 'r': out.push_back('\r'); ++pos_; break;
          case 'b': out.push_back('\b'); ++pos_; break;
          case 'f': out.push_back('\f'); ++pos_; break;
          case '"': out.push_back('"'); ++pos_; break;
          case '\'': out.push_back('\''); ++pos_; break;
          case '\\': out.push_back('\\'); ++pos_; break;
          default: read_uchar(out);
        }
        continue;
      }
      out.push_back(c);
      ++pos_;
    }
    if (peek() == '@' || peek() == '^') fail("language tags and datatypes are not supported");
    return out;
  }

  void read_predicate_objects(const std::string& subject, ParsedTurtle& result) {
    while (true) {
      skip_ws();
      std::string predicate;
      if (peek() == 'a' && pos_ + 1 < text_.size() &&
          (text_[pos_ + 1] == ' ' || text_[pos_ + 1] == '\t' || text_[pos_ + 1] == '<')) {
        ++pos_;
        predicate = kRdfType;
      } else {
        predicate = read_iri_term(result.prefixes);
      }
      while (true) {
        skip_ws();
        if (peek() == '"') {
          std::string value = read_literal();
          if (predicate == kRdfsLabel) {
            result.document.insert(Axiom::label(subject, std::move(value)));
          } else if (predicate == kRdfType || predicate == kRdfsSubClassOf) {
            fail("literal object for an IRI-valued predicate");
          } else {
            result.document.insert(Axiom::annotation(subject, predicate, std::move(value)));
          }
        } else {
          std::string object = read_iri_term(result.prefixes);
          if (predicate == kRdfType && object == kOwlClass) {
            result.document.insert(Axiom::class_declaration(subject));
          } else if (predicate == kRdfsSubClassOf) {
            result.document.insert(Axiom::subclass_of(subject, std::move(object)));
          } else if (predicate == kRdfsLabel) {
            fail("IRI object for rdfs:label");
          } else {
            result.document.insert(Axiom::relation(subject, predicate, std::move(object)));
          }
        }
        skip_ws();
        if (peek() != ',') break;
        ++pos_;
      }
      skip_ws();
      if (peek() != ';') return;
      ++pos_;
      skip_ws();
      if (peek() == '.') return;  // trailing ';'
    }
  }

  std::string_view text_;
  std::string file_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace

ParsedTurtle parse_turtle(std::string_view text, std::string_view file_name) {
  return TurtleReader(text, file_name).read();
}

}  // namespace flavokg
