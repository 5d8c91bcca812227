#include <gtest/gtest.h>

#include <random>

#include "flavokg/csv.hpp"
#include "flavokg/error.hpp"
#include "test_support.hpp"

using namespace flavokg;

namespace {

// Independent single-record reader used as the oracle: a character state
// machine with no shared code with csv::parse.
std::vector<std::string> oracle_fields(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

}  // namespace

TEST(Csv, QuotedCommasMatchOracle) {
  std::string line = "09003,\"Apples, raw, with skin\",Fruits";
  auto rows = csv::parse(line + "\n");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].cells, oracle_fields(line));
  EXPECT_EQ(rows[0].cells[1], "Apples, raw, with skin");
}

TEST(Csv, CrlfBomAndBlankLines) {
  auto rows = csv::parse("\xEF\xBB\xBF" "a,b\r\n\r\n1,2\r\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].cells, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(rows[1].line, 3u);
}

TEST(Csv, MultilineQuotedFieldKeepsStartLine) {
  auto rows = csv::parse("h\n\"x\ny\"\nz\n");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1].cells[0], "x\ny");
  EXPECT_EQ(rows[1].line, 2u);
  EXPECT_EQ(rows[2].line, 4u);
}

TEST(Csv, UnterminatedQuoteIsAnError) {
  try {
    csv::parse("a\n\"open\n", "t.csv");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(csv::parse("\"a\"x,b\n"), ParseError);
}

TEST(Csv, WriteParseRoundTripRandom) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::vector<std::string>> rows;
    std::uniform_int_distribution<int> width(1, 5), height(1, 6);
    int w = width(rng);
    for (int r = height(rng); r > 0; --r) {
      std::vector<std::string> row;
      for (int c = 0; c < w; ++c) {
        row.push_back(testing_support::random_word(rng, 0, 6, "ab ,\"\n\r;x"));
      }
      // Fully empty records are skipped by design, so keep one cell non-empty.
      if (row.size() == 1 && row[0].empty()) row[0] = "v";
      rows.push_back(row);
    }
    std::string text = csv::write(rows);
    auto parsed = csv::parse(text);
    ASSERT_EQ(parsed.size(), rows.size()) << text;
    for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(parsed[i].cells, rows[i]) << text;
  }
}

TEST(Csv, EscapeOnlyWhenNeeded) {
  EXPECT_EQ(csv::escape_field("plain"), "plain");
  EXPECT_EQ(csv::escape_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv::escape_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv::escape_field(" pad"), "\" pad\"");
}

TEST(Csv, SplitTsvKeepsBlankLines) {
  auto rows = csv::split_tsv("a\tb\r\n\nc\n");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].cells, (std::vector<std::string>{"a", "b"}));
  EXPECT_TRUE(rows[1].cells.empty());
  EXPECT_EQ(rows[2].line, 3u);
}
