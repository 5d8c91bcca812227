#include <gtest/gtest.h>

#include <random>
#include <set>

#include "flavokg/query.hpp"
#include "kg_support.hpp"

using namespace flavokg;

namespace {

const std::string kMilk =
    "Milk, chocolate, fluid, commercial, reduced fat, with added vitamin A and vitamin D";

const testing_support::BuiltGraph& fixture() {
  static const auto built = testing_support::build_minted(testing_support::fixture_tables());
  return built;
}

QueryResult run(const std::string& q) { return execute(parse_query(q), fixture().graph); }

std::set<std::string> column(const ResultTable& t, std::size_t i) {
  std::set<std::string> out;
  for (const auto& r : t.rows) out.insert(r[i]);
  return out;
}

}  // namespace

TEST(QueryParse, Forms) {
  auto ast = parse_query("FOODS IN GROUP \"Dairy and Egg Products\"");
  ASSERT_TRUE(std::holds_alternative<FoodsInGroup>(ast));
  EXPECT_EQ(std::get<FoodsInGroup>(ast).label, "Dairy and Egg Products");
  EXPECT_TRUE(std::holds_alternative<FlavonoidsOfFood>(parse_query("flavonoids of food \"x\"")));
  EXPECT_TRUE(std::holds_alternative<FoodsContainingFlavonoid>(
      parse_query("FOODS CONTAINING FLAVONOID \"x\"")));
  EXPECT_TRUE(std::holds_alternative<DiseasesOfFlavonoid>(parse_query("DISEASES OF FLAVONOID \"x\"")));
  EXPECT_TRUE(std::holds_alternative<FoodsForDisease>(parse_query("  FOODS FOR DISEASE \"x\"  ")));
  auto n = std::get<Neighbors>(parse_query("NEIGHBORS \"urn:a\" VIA parent_of IN"));
  EXPECT_EQ(n.iri, "urn:a");
  EXPECT_EQ(n.edge_kind, "parent_of");
  EXPECT_EQ(n.direction, Direction::in);
  EXPECT_EQ(std::get<FoodsInGroup>(parse_query(R"(FOODS IN GROUP "a \"b\" \\ c")")).label,
            "a \"b\" \\ c");
}

TEST(QueryParse, Errors) {
  try {
    parse_query("FOODS GROUP \"X\"");
    FAIL();
  } catch (const QuerySyntaxError& e) {
    EXPECT_EQ(e.column(), 7u);
  }
  try {
    parse_query("NEIGHBORS \"urn:a\" VIA eats OUT");
    FAIL();
  } catch (const QuerySyntaxError& e) {
    EXPECT_EQ(e.column(), 23u);
    EXPECT_NE(std::string(e.what()).find("parent_of"), std::string::npos);
  }
  EXPECT_THROW(parse_query(""), QuerySyntaxError);
  EXPECT_THROW(parse_query("FOODS IN GROUP \"\""), QuerySyntaxError);
  EXPECT_THROW(parse_query("FOODS IN GROUP \"open"), QuerySyntaxError);
  EXPECT_THROW(parse_query("FOODS IN GROUP \"a\" extra"), QuerySyntaxError);
  EXPECT_THROW(parse_query("FOODS IN GROUP dairy"), QuerySyntaxError);
  EXPECT_THROW(parse_query("NEIGHBORS \"urn:a\" VIA parent_of SIDEWAYS"), QuerySyntaxError);
}

TEST(QueryExec, DairyDialogue) {
  auto r = run("FOODS IN GROUP \"Dairy and Egg Products\"");
  EXPECT_EQ(r.table.columns, std::vector<std::string>{"food"});
  EXPECT_EQ(r.table.rows, (std::vector<std::vector<std::string>>{{kMilk}}));
  auto f = run("FLAVONOIDS OF FOOD \"" + kMilk + "\"");
  auto names = column(f.table, 0);
  EXPECT_TRUE(names.contains("(+)-Catechin"));
  EXPECT_TRUE(names.contains("(+)-Gallocatechin"));
  EXPECT_TRUE(f.warnings.empty());
}

TEST(QueryExec, LabelsMatchOnCanonicalKeys) {
  EXPECT_EQ(run("FOODS IN GROUP \"dairy and egg product\"").table.rows.size(), 1u);
  EXPECT_EQ(run("FLAVONOIDS OF FOOD \"apples\"").table, run("FLAVONOIDS OF FOOD \"Apple\"").table);
}

TEST(QueryExec, UnknownLabelWarns) {
  auto r = run("FOODS IN GROUP \"Nonexistent\"");
  EXPECT_TRUE(r.table.rows.empty());
  ASSERT_EQ(r.warnings.size(), 1u);
  auto n = run("NEIGHBORS \"urn:none\" VIA parent_of OUT");
  EXPECT_TRUE(n.table.rows.empty());
  EXPECT_EQ(n.warnings.size(), 1u);
}

TEST(QueryExec, DiseasesOfFlavonoid) {
  auto r = run("DISEASES OF FLAVONOID \"Quercetin\"");
  EXPECT_EQ(r.table.columns, (std::vector<std::string>{"disease", "effect", "citation"}));
  EXPECT_EQ(column(r.table, 0),
            (std::set<std::string>{"asthma", "colon cancer", "inflammatory bowel disease"}));
}

TEST(QueryExec, ForDiseaseMatchesOracleOnFixture) {
  for (std::string d : {"colon cancer", "cancer", "asthma", "rectal cancer", "breast cancer"}) {
    auto r = run("FOODS FOR DISEASE \"" + d + "\"");
    std::set<std::vector<std::string>> got(r.table.rows.begin(), r.table.rows.end());
    EXPECT_EQ(got, testing_support::foods_for_disease_oracle(fixture(), d)) << d;
  }
}

TEST(QueryExec, ContainmentConverse) {
  // f in FLAVONOIDS OF FOOD x  <=>  x in FOODS CONTAINING FLAVONOID f
  const auto& g = fixture().graph;
  for (const Node* food : g.nodes_of_kind("food")) {
    auto of = execute(FlavonoidsOfFood{food->label}, g);
    for (const auto& row : of.table.rows) {
      auto back = execute(FoodsContainingFlavonoid{row[0]}, g);
      EXPECT_TRUE(column(back.table, 0).contains(food->label)) << food->label << " " << row[0];
    }
  }
  for (const Node* flav : g.nodes_of_kind("flavonoid")) {
    for (const auto& row : execute(FoodsContainingFlavonoid{flav->label}, g).table.rows) {
      EXPECT_TRUE(column(execute(FlavonoidsOfFood{row[0]}, g).table, 0).contains(flav->label));
    }
  }
}

TEST(QueryExec, ReadOnlyAndDeterministic) {
  const auto& g = fixture().graph;
  auto before = graph_fingerprint(g);
  auto a = run("FOODS FOR DISEASE \"colon cancer\"");
  auto b = run("FOODS FOR DISEASE \"colon cancer\"");
  EXPECT_EQ(a.table, b.table);
  EXPECT_EQ(graph_fingerprint(g), before);
  EXPECT_TRUE(std::is_sorted(a.table.rows.begin(), a.table.rows.end()));
}

TEST(QueryExec, Neighbors) {
  const auto& g = fixture().graph;
  const Node* dairy = nullptr;
  for (const Node* n : g.nodes_of_kind("food_group"))
    if (n->label == "Dairy and Egg Products") dairy = n;
  ASSERT_NE(dairy, nullptr);
  auto r = execute(Neighbors{dairy->iri, "parent_of", Direction::out}, g);
  ASSERT_EQ(r.table.rows.size(), 1u);
  EXPECT_EQ(r.table.rows[0][1], "food");
  EXPECT_EQ(r.table.rows[0][2], kMilk);
}

TEST(QueryExec, ForDiseaseRandomFixtures) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 30; ++i) {
    auto built = testing_support::build_minted(testing_support::random_tables(rng, 10, 40, 15));
    std::string d = "disease " + std::to_string(rng() % 8);
    auto r = execute(FoodsForDisease{d}, built.graph);
    std::set<std::vector<std::string>> got(r.table.rows.begin(), r.table.rows.end());
    EXPECT_EQ(got, testing_support::foods_for_disease_oracle(built, d));
  }
}

TEST(QueryOutput, Tsv) {
  ResultTable t{{"a", "b"}, {{"1", "x"}, {"2", "y"}}};
  EXPECT_EQ(write_result_tsv(t), "a\tb\n1\tx\n2\ty\n");
}
