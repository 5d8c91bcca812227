#include <gtest/gtest.h>

#include <random>

#include "flavokg/error.hpp"
#include "flavokg/ingest.hpp"
#include "test_support.hpp"

using namespace flavokg;

namespace {

const char* kMilk =
    "Milk, chocolate, fluid, commercial, reduced fat, with added vitamin A and vitamin D";

std::size_t error_line(const auto& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(Ingest, FoodRowWithQuotedCommas) {
  auto foods = parse_food_table("FoodCode,Description,FoodGroup\n09003,\"Apples, raw, with skin\",Fruits\n");
  ASSERT_EQ(foods.size(), 1u);
  EXPECT_EQ(foods[0].food_code, "09003");
  EXPECT_EQ(foods[0].description, "Apples, raw, with skin");
  EXPECT_EQ(foods[0].food_group, "Fruits");
  EXPECT_EQ(foods[0].source.line_number, 2u);
  EXPECT_EQ(foods[0].source.file_name, "foods.csv");
}

TEST(Ingest, MilkDescriptionKeptExactly) {
  std::string text = std::string("FoodCode,Description,FoodGroup\n01103,\"") + kMilk +
                     "\",Dairy and Egg Products\n";
  auto foods = parse_food_table(text);
  ASSERT_EQ(foods.size(), 1u);
  EXPECT_EQ(foods[0].description, kMilk);
  EXPECT_EQ(foods[0].food_group, "Dairy and Egg Products");
}

TEST(Ingest, HeaderOnlyAndCaseInsensitiveReorderedHeader) {
  EXPECT_TRUE(parse_food_table("FoodCode,Description,FoodGroup\n").empty());
  auto foods = parse_food_table("foodgroup,FOODCODE,description\nFruits,1,apple\n");
  ASSERT_EQ(foods.size(), 1u);
  EXPECT_EQ(foods[0].food_code, "1");
  EXPECT_EQ(foods[0].description, "apple");
}

TEST(Ingest, MissingColumnNamed) {
  try {
    parse_food_table("FoodCode,Description\n1,x\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("FoodGroup"), std::string::npos);
  }
}

TEST(Ingest, DuplicateFoodCodeListsBothLines) {
  try {
    parse_food_table("FoodCode,Description,FoodGroup\n1,a,g\n2,b,g\n1,c,g\n");
    FAIL();
  } catch (const ParseError& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("2"), std::string::npos);
    EXPECT_NE(msg.find("4"), std::string::npos);
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(Ingest, EmptyRequiredCell) {
  EXPECT_EQ(error_line([] { parse_food_table("FoodCode,Description,FoodGroup\n1,a,g\n2,,g\n"); }), 3u);
}

TEST(Ingest, ContentMeans) {
  const std::string header = "FoodCode,FlavonoidName,Subclass,Mean_mg_100g,Method,State\n";
  auto rows = parse_flavonoid_table(header + "01103,(+)-Catechin,Flavan-3-ols,2.0,HPLC,fluid\n" +
                                    "01103,(+)-Gallocatechin,Flavan-3-ols,0,HPLC,fluid\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].flavonoid_name, "(+)-Catechin");
  EXPECT_EQ(rows[0].mean_mg_per_100g, 2.0);
  EXPECT_EQ(rows[1].mean_mg_per_100g, 0.0);
  EXPECT_EQ(error_line([&] { parse_flavonoid_table(header + "1,a,b,1,m,s\n1,a,b,-1,m,s\n"); }), 3u);
  EXPECT_EQ(error_line([&] { parse_flavonoid_table(header + "1,a,b,abc,m,s\n"); }), 2u);
  EXPECT_EQ(error_line([&] { parse_flavonoid_table(header + "1,a,b,nan,m,s\n"); }), 2u);
  // Unknown subclass names are accepted here.
  EXPECT_NO_THROW(parse_flavonoid_table(header + "1,a,Nonsense,1,m,s\n"));
}

TEST(Ingest, Associations) {
  const std::string header = "FlavonoidName,DiseaseLabel,DiseaseId,Effect,Citation\n";
  auto rows = parse_disease_associations(header + "Luteolin,cancer,,anti-cancer,ref19\n"
                                                  "Quercetin,colon cancer,DOID:219,risk-reduction,ref5\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].flavonoid_name, "Luteolin");
  EXPECT_EQ(rows[0].effect, "anti-cancer");
  EXPECT_FALSE(rows[0].external_disease_id.has_value());
  EXPECT_EQ(rows[1].external_disease_id, "DOID:219");
  EXPECT_TRUE(parse_disease_associations(header).empty());
  EXPECT_EQ(error_line([&] { parse_disease_associations(header + ",cancer,,x,y\n"); }), 2u);
}

TEST(Ingest, ColumnRenames) {
  ColumnRenames renames{{"code", "FoodCode"}, {"desc", "Description"}, {"grp", "FoodGroup"}};
  auto foods = parse_food_table("CODE,desc,grp\n7,x,y\n", "f.csv", renames);
  ASSERT_EQ(foods.size(), 1u);
  EXPECT_EQ(foods[0].food_code, "7");
}

TEST(Ingest, DrugTable) {
  auto drugs = parse_drug_table(
      "DrugName,CompositionOfFoodCode,TrialId,DiseaseLabel\nX,14278,T-1,colon cancer\nY,1,,\n");
  ASSERT_EQ(drugs.size(), 2u);
  EXPECT_EQ(drugs[0].trial_id, "T-1");
  EXPECT_TRUE(drugs[1].trial_id.empty());
}

TEST(Ingest, RoundTripRandomRecords) {
  std::mt19937_64 rng(11);
  const std::string alphabet = "abc ,\"xyz-()+";
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<FoodRecord> foods;
    std::vector<ContentRecord> contents;
    std::vector<AssociationRecord> assocs;
    int n = static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) {
      foods.push_back({"F" + std::to_string(i), "d" + testing_support::random_word(rng, 0, 8, alphabet) + "e",
                       "g" + testing_support::random_word(rng, 0, 5, alphabet) + "h", {}});
      contents.push_back({"F" + std::to_string(i), "v" + testing_support::random_word(rng, 0, 8, alphabet) + "w",
                          "s", static_cast<double>(rng() % 100000) / 97.0, "m", "", {}});
      std::optional<std::string> id;
      if (rng() % 2) id = "DOID:" + std::to_string(rng() % 1000);
      assocs.push_back({"v" + testing_support::random_word(rng, 0, 6, alphabet) + "w", "dis", id, "", "c", {}});
    }
    auto strip = [](auto records) {
      for (auto& r : records) r.source = {};
      return records;
    };
    EXPECT_EQ(strip(parse_food_table(write_food_table(foods))), foods);
    EXPECT_EQ(strip(parse_flavonoid_table(write_flavonoid_table(contents))), contents);
    EXPECT_EQ(strip(parse_disease_associations(write_disease_associations(assocs))), assocs);
  }
}

TEST(Ingest, RecordCountEqualsDataRows) {
  std::string text = "FoodCode,Description,FoodGroup\n";
  for (int i = 0; i < 250; ++i) text += std::to_string(i) + ",food " + std::to_string(i) + ",g\n";
  auto foods = parse_food_table(text);
  ASSERT_EQ(foods.size(), 250u);
  for (std::size_t i = 0; i < foods.size(); ++i) EXPECT_EQ(foods[i].source.line_number, i + 2);
}
