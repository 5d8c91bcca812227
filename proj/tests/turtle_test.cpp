#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>
#include <sstream>

#include "flavokg/error.hpp"
#include "flavokg/templater.hpp"
#include "flavokg/turtle.hpp"
#include "kg_support.hpp"

using namespace flavokg;
using testing_support::slurp;

namespace {

const std::string kNs = "http://example.org/ff/";

PrefixMap ff_prefixes() {
  PrefixMap p;
  p.add("ff", kNs);
  return p;
}

// Line-oriented reader for the canonical layout only: returns
// (subject, predicate, object) token triples with prefixes left unexpanded.
std::set<std::tuple<std::string, std::string, std::string>> naive_triples(const std::string& ttl) {
  std::set<std::tuple<std::string, std::string, std::string>> out;
  std::istringstream in(ttl);
  std::string line, subject;
  while (std::getline(in, line)) {
    if (line.empty() || line.starts_with("@prefix")) continue;
    std::string body = line;
    if (body.ends_with(" ;") || body.ends_with(" .")) body.resize(body.size() - 2);
    if (!line.starts_with("    ")) {
      auto sp = body.find(' ');
      subject = body.substr(0, sp);
      body = body.substr(sp + 1);
    } else {
      body = body.substr(4);
    }
    auto sp = body.find(' ');
    out.insert({subject, body.substr(0, sp), body.substr(sp + 1)});
  }
  return out;
}

}  // namespace

TEST(Turtle, GoldenApple) {
  OwlDocument doc;
  doc.insert(Axiom::class_declaration(kNs + "apple"));
  doc.insert(Axiom::label(kNs + "apple", "apple"));
  EXPECT_EQ(serialize_turtle(doc, ff_prefixes()),
            slurp(std::string(FLAVOKG_GOLDEN_DIR) + "/apple.ttl"));
}

TEST(Turtle, GoldenOrdering) {
  PrefixMap p = ff_prefixes();
  p.add("CHEBI", "http://purl.obolibrary.org/obo/CHEBI_");
  OwlDocument doc;
  doc.insert(Axiom::annotation(kNs + "apple", std::string(kOboInOwl) + "hasDbXref", "say \"hi\"\n"));
  doc.insert(Axiom::relation(kNs + "apple", kNs + "contains_flavonoid",
                             "http://purl.obolibrary.org/obo/CHEBI_28499"));
  doc.insert(Axiom::relation(kNs + "apple", kNs + "contains_flavonoid",
                             kNs + "%28%2B%29-catechin/x"));
  doc.insert(Axiom::subclass_of(kNs + "apple", kNs + "fruit"));
  doc.insert(Axiom::label(kNs + "apple", "apple"));
  doc.insert(Axiom::class_declaration(kNs + "fruit"));
  doc.insert(Axiom::class_declaration(kNs + "apple"));
  std::string ttl = serialize_turtle(doc, p);
  EXPECT_EQ(ttl, slurp(std::string(FLAVOKG_GOLDEN_DIR) + "/fruit.ttl"));
  EXPECT_EQ(parse_turtle(ttl).document, doc);
}

TEST(Turtle, EmptyDocIsPrefixBlock) {
  std::string ttl = serialize_turtle(OwlDocument{}, ff_prefixes());
  std::istringstream in(ttl);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    EXPECT_TRUE(line.starts_with("@prefix ")) << line;
    ++n;
  }
  EXPECT_EQ(n, 5u);
}

TEST(Turtle, FixtureFixedPoint) {
  auto built = testing_support::build_minted(testing_support::fixture_tables());
  PrefixMap prefixes = ff_prefixes();
  OwlDocument doc = build_ontology(graph_to_templates(built.graph, prefixes, kNs), prefixes);
  std::string first = serialize_turtle(doc, prefixes);
  ParsedTurtle parsed = parse_turtle(first, "ontology.ttl");
  EXPECT_EQ(parsed.document, doc);
  std::string second = serialize_turtle(parsed.document, parsed.prefixes);
  EXPECT_EQ(first, second);
  EXPECT_EQ(first.find(" \n"), std::string::npos);
  EXPECT_EQ(first.find('\r'), std::string::npos);

  // independent reading agrees on the triple count
  std::size_t triples = 0;
  for (const auto& a : doc) {
    (void)a;
    ++triples;
  }
  EXPECT_EQ(naive_triples(first).size(), triples);
}

TEST(Turtle, RandomFixedPoint) {
  std::mt19937_64 rng(4);
  PrefixMap prefixes = ff_prefixes();
  for (int round = 0; round < 100; ++round) {
    OwlDocument doc;
    for (int i = 0; i < 12; ++i) {
      std::string s = kNs + testing_support::random_word(rng, 1, 4, "ab(%/");
      std::string lit = testing_support::random_word(rng, 0, 6, "a\"\\\n\t \x01\xC3\xA9");
      switch (rng() % 4) {
        case 0: doc.insert(Axiom::class_declaration(s)); break;
        case 1: doc.insert(Axiom::annotation(s, kNs + "note", lit)); break;
        case 2: doc.insert(Axiom::subclass_of(s, kNs + "p")); break;
        default: doc.insert(Axiom::relation(s, kNs + "r", "urn:z:" + lit.substr(0, 0) + "q")); break;
      }
    }
    std::string ttl = serialize_turtle(doc, prefixes);
    auto parsed = parse_turtle(ttl);
    EXPECT_EQ(parsed.document, doc) << ttl;
    EXPECT_EQ(serialize_turtle(parsed.document, parsed.prefixes), ttl);
  }
}

TEST(Turtle, ReaderSubset) {
  auto parsed = parse_turtle(
      "# comment\nPREFIX ex: <http://e.org/>\n@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
      "ex:a a owl:Class, ex:K ; ex:p \"x\", \"y\" .\n<http://e.org/b> ex:q ex:a.\n");
  OwlDocument want;
  want.insert(Axiom::class_declaration("http://e.org/a"));
  want.insert(Axiom::relation("http://e.org/a", std::string(kRdf) + "type", "http://e.org/K"));
  want.insert(Axiom::annotation("http://e.org/a", "http://e.org/p", "x"));
  want.insert(Axiom::annotation("http://e.org/a", "http://e.org/p", "y"));
  want.insert(Axiom::relation("http://e.org/b", "http://e.org/q", "http://e.org/a"));
  EXPECT_EQ(parsed.document, want);
}

TEST(Turtle, ReaderErrors) {
  EXPECT_THROW(parse_turtle("_:b <http://x/p> <http://x/o> ."), ParseError);
  EXPECT_THROW(parse_turtle("<http://x/s> <http://x/p> \"a\"@en ."), ParseError);
  EXPECT_THROW(parse_turtle("<http://x/s> <http://x/p> 12 ."), ParseError);
  EXPECT_THROW(parse_turtle("ex:s <http://x/p> <http://x/o> ."), ParseError);  // unbound
  try {
    parse_turtle("@prefix ex: <http://e/> .\n\nex:s ex:p\n", "t.ttl");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.file(), "t.ttl");
    EXPECT_GE(e.line(), 3u);
  }
}
