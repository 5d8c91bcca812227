#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "flavokg/error.hpp"
#include "flavokg/templater.hpp"
#include "kg_support.hpp"

using namespace flavokg;

namespace {

const std::string kNs = "http://example.org/ff/";

PrefixMap ff_prefixes() {
  PrefixMap p;
  p.add("ff", kNs);
  p.add("CHEBI", "http://purl.obolibrary.org/obo/CHEBI_");
  return p;
}

OwlDocument random_doc(std::mt19937_64& rng) {
  OwlDocument doc;
  std::size_t n = rng() % 6;
  for (std::size_t i = 0; i < n; ++i) {
    std::string s = "urn:x" + std::to_string(rng() % 8);
    std::string o = "urn:x" + std::to_string(rng() % 8);
    switch (rng() % 5) {
      case 0: doc.insert(Axiom::class_declaration(s)); break;
      case 1: doc.insert(Axiom::label(s, "label " + s)); break;  // one label per IRI
      case 2: doc.insert(Axiom::subclass_of(s, o)); break;
      case 3: doc.insert(Axiom::annotation(s, "urn:p", std::to_string(rng() % 3))); break;
      default: doc.insert(Axiom::relation(s, "urn:r", o)); break;
    }
  }
  return doc;
}

const TemplateSheet* sheet_named(const std::vector<TemplateSheet>& sheets, const std::string& name) {
  for (const auto& s : sheets)
    if (s.name == name) return &s;
  return nullptr;
}

}  // namespace

TEST(Directive, Parse) {
  EXPECT_EQ(parse_directive("ID").kind, DirectiveKind::id);
  EXPECT_EQ(parse_directive("LABEL").kind, DirectiveKind::label);
  EXPECT_EQ(parse_directive("TYPE").kind, DirectiveKind::type);
  EXPECT_EQ(parse_directive("SC %").kind, DirectiveKind::subclass);
  EXPECT_EQ(parse_directive("").kind, DirectiveKind::ignore);
  auto a = parse_directive("A oboInOwl:hasDbXref SPLIT=|");
  EXPECT_EQ(a.kind, DirectiveKind::annotation);
  EXPECT_EQ(a.property, "oboInOwl:hasDbXref");
  EXPECT_EQ(a.split, '|');
  EXPECT_EQ(parse_directive("R ff:has_component").kind, DirectiveKind::relation);
  try {
    parse_directive("sc %");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("'sc %'"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_directive("id"), Error);
  EXPECT_THROW(parse_directive("A"), Error);
}

TEST(Template, ParseSheet) {
  auto sheet = parse_template("ID,Label,Parent\nID,LABEL,SC %\nff:apple,apple,ff:fruits\n", "s");
  EXPECT_EQ(sheet.columns.size(), 3u);
  ASSERT_EQ(sheet.rows.size(), 1u);
  EXPECT_EQ(sheet.id_column(), 0u);
  EXPECT_EQ(parse_template(write_template(sheet), "s").rows, sheet.rows);
}

TEST(Template, ParseErrors) {
  EXPECT_THROW(parse_template("A,B\nLABEL,LABEL\n"), Error);        // no ID
  EXPECT_THROW(parse_template("A,B\nID,ID\n"), Error);              // two IDs
  EXPECT_THROW(parse_template("A,B\nID,sc %\n"), Error);
  try {
    parse_template("A,B\nID,LABEL\nff:a,a\n,b\n", "sheet.csv");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
  EXPECT_THROW(parse_template("A,B\nID,LABEL\nff:a\n"), ParseError);  // short row
}

TEST(Template, MinimalRow) {
  auto sheet = parse_template("ID,Label\nID,LABEL\nff:apple,apple\n");
  OwlDocument doc = expand_template(sheet, ff_prefixes());
  OwlDocument want;
  want.insert(Axiom::class_declaration(kNs + "apple"));
  want.insert(Axiom::label(kNs + "apple", "apple"));
  EXPECT_EQ(doc, want);
}

TEST(Template, EmptyCellsProduceNothing) {
  auto sheet = parse_template("ID,Label,P,X\nID,LABEL,SC %,A ff:note\nff:a,,,\n");
  EXPECT_EQ(expand_template(sheet, ff_prefixes()).size(), 1u);
}

TEST(Template, UnresolvablePrefixNamed) {
  auto sheet = parse_template("ID,P\nID,SC %\nff:a,FOO:1\n");
  try {
    expand_template(sheet, ff_prefixes());
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("FOO"), std::string::npos);
  }
}

TEST(Template, ThreeAxiomsPerRow) {
  std::mt19937_64 rng(2);
  for (std::size_t n : {0, 1, 2, 7, 50, 300}) {
    std::string csv = "ID,Label,Parent\nID,LABEL,SC %\n";
    for (std::size_t i = 0; i < n; ++i) {
      csv += "ff:c" + std::to_string(i) + "," + testing_support::random_word(rng, 1, 8) +
             ",ff:p" + std::to_string(rng() % 5) + "\n";
    }
    EXPECT_EQ(expand_template(parse_template(csv), ff_prefixes()).size(), 3 * n);
  }
}

TEST(Template, ExpansionIsMonotone) {
  std::string csv = "ID,Label,Parent\nID,LABEL,SC % SPLIT=|\n";
  OwlDocument prev;
  for (int i = 0; i < 20; ++i) {
    csv += "ff:c" + std::to_string(i % 7) + ",l" + std::to_string(i % 7) + ",ff:p" +
           std::to_string(i) + "|ff:q\n";
    OwlDocument next = expand_template(parse_template(csv), ff_prefixes());
    EXPECT_TRUE(std::includes(next.begin(), next.end(), prev.begin(), prev.end()));
    prev = next;
  }
}

TEST(Template, CatechinSubclass) {
  auto sheet = parse_template(
      "ID,Label,Parent\nID,LABEL,SC %\nff:%28%2B%29-catechin,(+)-Catechin,ff:flavan-3-ols\n");
  auto doc = expand_template(sheet, ff_prefixes());
  EXPECT_TRUE(doc.contains(Axiom::subclass_of(kNs + "%28%2B%29-catechin", kNs + "flavan-3-ols")));
}

TEST(Merge, LabelConflict) {
  OwlDocument a, b;
  a.insert(Axiom::label("urn:x", "one"));
  b.insert(Axiom::label("urn:x", "two"));
  try {
    merge_documents(a, b);
    FAIL();
  } catch (const Error& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("one"), std::string::npos);
    EXPECT_NE(msg.find("two"), std::string::npos);
  }
}

TEST(Merge, Semilattice) {
  std::mt19937_64 rng(23);
  OwlDocument empty;
  for (int i = 0; i < 200; ++i) {
    OwlDocument a = random_doc(rng), b = random_doc(rng), c = random_doc(rng);
    EXPECT_EQ(merge_documents(a, a), a);
    EXPECT_EQ(merge_documents(a, empty), a);
    EXPECT_EQ(merge_documents(a, b), merge_documents(b, a));
    EXPECT_EQ(merge_documents(merge_documents(a, b), c), merge_documents(a, merge_documents(b, c)));
    std::vector<OwlDocument> all{a, b, c};
    EXPECT_EQ(merge_documents(all), merge_documents(merge_documents(a, b), c));
  }
}

TEST(Layers, EmptyGraph) {
  auto layers = graph_to_templates(KnowledgeGraph{}, ff_prefixes(), kNs);
  for (const auto* layer : {&layers.layer1, &layers.layer2, &layers.layer3}) {
    ASSERT_FALSE(layer->empty());
    for (const auto& s : *layer) EXPECT_TRUE(s.rows.empty()) << s.name;
  }
  EXPECT_TRUE(build_ontology(layers, ff_prefixes()).empty());
}

TEST(Layers, Skeleton) {
  auto built = testing_support::build_minted({});
  auto layers = graph_to_templates(built.graph, ff_prefixes(), kNs);
  const auto* sub = sheet_named(layers.layer1, "layer1_flavonoid_subclass");
  ASSERT_NE(sub, nullptr);
  EXPECT_EQ(sub->rows.size(), 5u);
}

TEST(Layers, MilkJoinAndUnionOracle) {
  auto built = testing_support::build_minted(testing_support::fixture_tables());
  PrefixMap prefixes = ff_prefixes();
  auto layers = graph_to_templates(built.graph, prefixes, kNs);
  ASSERT_EQ(layers.layer3.size(), 1u);
  const auto& join = layers.layer3[0];
  bool found = false;
  for (const auto& row : join.rows) {
    if (row[1].starts_with("Milk, chocolate")) {
      found = row[2].find("ff:%28%2B%29-catechin") != std::string::npos;
    }
  }
  EXPECT_TRUE(found);

  std::set<Axiom> oracle;
  for (const auto* layer : {&layers.layer1, &layers.layer2, &layers.layer3})
    for (const auto& s : *layer)
      for (const auto& a : expand_template(s, prefixes)) oracle.insert(a);
  OwlDocument doc = build_ontology(layers, prefixes);
  EXPECT_EQ(doc.size(), oracle.size());
  EXPECT_TRUE(std::equal(doc.begin(), doc.end(), oracle.begin(), oracle.end()));
  // disease links as both a relation and an annotation
  bool relation = false, note = false;
  for (const auto& a : doc) {
    if (a.property == local_property(kNs, "has_associated_disease")) relation = true;
    if (a.property == local_property(kNs, kAssociatedDiseaseNote)) note = true;
  }
  EXPECT_TRUE(relation);
  EXPECT_TRUE(note);
}
