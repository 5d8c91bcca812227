#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "flavokg/error.hpp"
#include "flavokg/graph.hpp"
#include "flavokg/normalize.hpp"

namespace flavokg {

struct FoodsInGroup { std::string label; };
struct FlavonoidsOfFood { std::string label; };
struct FoodsContainingFlavonoid { std::string label; };
struct DiseasesOfFlavonoid { std::string label; };
struct FoodsForDisease { std::string label; };
struct Neighbors {
  std::string iri;
  std::string edge_kind;
  Direction direction = Direction::out;
};

using QueryAst = std::variant<FoodsInGroup, FlavonoidsOfFood, FoodsContainingFlavonoid,
                              DiseasesOfFlavonoid, FoodsForDisease, Neighbors>;

class QuerySyntaxError : public Error {
 public:
  QuerySyntaxError(std::size_t column, const std::string& message)
      : Error("column " + std::to_string(column) + ": " + message), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

// Grammar; keywords are case-insensitive and labels are double-quoted, with
// backslash escapes for '"' and backslash itself:
//   FOODS IN GROUP "<label>"
//   FLAVONOIDS OF FOOD "<label>"
//   FOODS CONTAINING FLAVONOID "<label>"
//   DISEASES OF FLAVONOID "<label>"
//   FOODS FOR DISEASE "<label>"
//   NEIGHBORS "<iri>" VIA <edge-kind> (IN|OUT)
// Throws QuerySyntaxError with a 1-based column.
QueryAst parse_query(std::string_view text, const Schema& schema = Schema::standard());

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;  // sorted, unique

  bool operator==(const ResultTable&) const = default;
};

struct QueryResult {
  ResultTable table;
  std::vector<std::string> warnings;
};

// Labels are matched on canonical keys for the entity kind of the form. An
// unmatched label gives an empty table and a warning.
QueryResult execute(const QueryAst& ast, const KnowledgeGraph& graph,
                    const Normalizer& normalizer = {});

// Header row then data rows, tab separated.
std::string write_result_tsv(const ResultTable& table);

}  // namespace flavokg
