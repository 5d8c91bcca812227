#include "flavokg/query.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "flavokg/csv.hpp"
#include "flavokg/ingest.hpp"

namespace flavokg {
namespace {

struct Token {
  enum Kind { word, string, end } kind;
  std::string text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
      continue;
    }
    std::size_t column = i + 1;
    if (c == '"') {
      std::string value;
      ++i;
      bool closed = false;
      while (i < text.size()) {
        char d = text[i];
        if (d == '\\' && i + 1 < text.size() && (text[i + 1] == '"' || text[i + 1] == '\\')) {
          value.push_back(text[i + 1]);
          i += 2;
          continue;
        }
        ++i;
        if (d == '"') {
          closed = true;
          break;
        }
        value.push_back(d);
      }
      if (!closed) throw QuerySyntaxError(column, "unterminated string");
      tokens.push_back({Token::string, std::move(value), column});
      continue;
    }
    auto is_word = [](char ch) {
      return (ch >= 'A' && ch <= 'Z') || (ch >= 'a' && ch <= 'z') ||
             (ch >= '0' && ch <= '9') || ch == '_' || ch == '-';
    };
    if (!is_word(c)) {
      throw QuerySyntaxError(column, std::string("unexpected character '") + c + "'");
    }
    std::size_t start = i;
    while (i < text.size() && is_word(text[i])) ++i;
    tokens.push_back({Token::word, std::string(text.substr(start, i - start)), column});
  }
  tokens.push_back({Token::end, "", text.size() + 1});
  return tokens;
}

class QueryParser {
 public:
  QueryParser(std::string_view text, const Schema& schema)
      : tokens_(tokenize(text)), schema_(schema) {}

  QueryAst parse() {
    QueryAst ast = parse_form();
    if (peek().kind != Token::end) {
      throw QuerySyntaxError(peek().column, "unexpected trailing input '" + peek().text + "'");
    }
    return ast;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Token::word: return "'" + t.text + "'";
      case Token::string: return "a quoted string";
      case Token::end: return "end of input";
    }
    return {};
  }

  bool at_keyword(std::string_view keyword) const {
    return peek().kind == Token::word && csv::ascii_lower(peek().text) == csv::ascii_lower(keyword);
  }

  void keyword(std::string_view keyword) {
    if (!at_keyword(keyword)) {
      throw QuerySyntaxError(peek().column,
                             "expected " + std::string(keyword) + ", found " + describe(peek()));
    }
    ++pos_;
  }

  std::string quoted(std::string_view what) {
    const Token& t = peek();
    if (t.kind != Token::string) {
      throw QuerySyntaxError(t.column, "expected quoted " + std::string(what) + ", found " +
                                           describe(t));
    }
    if (csv::trim(t.text).empty()) throw QuerySyntaxError(t.column, "empty " + std::string(what));
    ++pos_;
    return t.text;
  }

  QueryAst parse_form() {
    if (at_keyword("FOODS")) {
      ++pos_;
      if (at_keyword("IN")) {
        ++pos_;
        keyword("GROUP");
        return FoodsInGroup{quoted("label")};
      }
      if (at_keyword("CONTAINING")) {
        ++pos_;
        keyword("FLAVONOID");
        return FoodsContainingFlavonoid{quoted("label")};
      }
      if (at_keyword("FOR")) {
        ++pos_;
        keyword("DISEASE");
        return FoodsForDisease{quoted("label")};
      }
      throw QuerySyntaxError(peek().column,
                             "expected IN, CONTAINING or FOR, found " + describe(peek()));
    }
    if (at_keyword("FLAVONOIDS")) {
      ++pos_;
      keyword("OF");
      keyword("FOOD");
      return FlavonoidsOfFood{quoted("label")};
    }
    if (at_keyword("DISEASES")) {
      ++pos_;
      keyword("OF");
      keyword("FLAVONOID");
      return DiseasesOfFlavonoid{quoted("label")};
    }
    if (at_keyword("NEIGHBORS")) {
      ++pos_;
      Neighbors n;
      n.iri = quoted("IRI");
      keyword("VIA");
      const Token& edge = peek();
      if (edge.kind != Token::word) {
        throw QuerySyntaxError(edge.column, "expected an edge kind, found " + describe(edge));
      }
      if (!schema_.has_edge_kind(edge.text)) {
        std::string valid;
        for (const auto& k : schema_.edge_kinds()) valid += (valid.empty() ? "" : ", ") + k;
        throw QuerySyntaxError(edge.column,
                               "unknown edge kind '" + edge.text + "' (valid: " + valid + ")");
      }
      n.edge_kind = edge.text;
      ++pos_;
      if (at_keyword("IN")) {
        n.direction = Direction::in;
      } else if (at_keyword("OUT")) {
        n.direction = Direction::out;
      } else {
        throw QuerySyntaxError(peek().column, "expected IN or OUT, found " + describe(peek()));
      }
      ++pos_;
      return n;
    }
    throw QuerySyntaxError(peek().column,
                           "expected FOODS, FLAVONOIDS, DISEASES or NEIGHBORS, found " +
                               describe(peek()));
  }

  std::vector<Token> tokens_;
  const Schema& schema_;
  std::size_t pos_ = 0;
};

class Executor {
 public:
  Executor(const KnowledgeGraph& graph, const Normalizer& normalizer)
      : graph_(graph), normalizer_(normalizer) {}

  QueryResult run(const QueryAst& ast) {
    std::visit([this](const auto& form) { evaluate(form); }, ast);
    result_.table.rows.assign(rows_.begin(), rows_.end());
    return std::move(result_);
  }

 private:
  // Nodes of `node_kind` whose label canonicalizes to the same key.
  std::vector<const Node*> match(std::string_view label, EntityKind kind,
                                 std::string_view node_kind) {
    std::optional<std::string> key;
    try {
      key = normalizer_.key_for(label, kind);
    } catch (const Error&) {
    }
    std::vector<const Node*> out;
    if (key) {
      for (const Node* node : graph_.nodes_of_kind(node_kind)) {
        try {
          if (normalizer_.key_for(node->label, kind) == *key) out.push_back(node);
        } catch (const Error&) {
        }
      }
    }
    if (out.empty()) {
      result_.warnings.push_back("no " + std::string(node_kind) + " matches label '" +
                                 std::string(label) + "'");
    }
    return out;
  }

  std::string label_of(std::string_view iri) const {
    const Node* node = graph_.find_node(iri);
    return node ? node->label : std::string(iri);
  }

  void evaluate(const FoodsInGroup& q) {
    result_.table.columns = {"food"};
    for (const Node* group : match(q.label, EntityKind::food_group, node_kind::kFoodGroup)) {
      for (const Edge* e : graph_.incident(group->iri, edge_kind::kParentOf, Direction::out)) {
        const Node* food = graph_.find_node(e->target);
        if (food && food->kind == node_kind::kFood) rows_.insert({food->label});
      }
    }
  }

  void evaluate(const FlavonoidsOfFood& q) {
    result_.table.columns = {"flavonoid", "mean_mg_per_100g"};
    std::set<std::string> foods;
    for (const Node* n : match(q.label, EntityKind::food, node_kind::kFood)) foods.insert(n->iri);
    if (foods.empty()) return;
    for (const auto& row : derived_contains(graph_)) {
      if (foods.contains(row.food_iri)) {
        rows_.insert({label_of(row.flavonoid_iri), format_decimal(row.mean_mg_per_100g)});
      }
    }
  }

  void evaluate(const FoodsContainingFlavonoid& q) {
    result_.table.columns = {"food", "mean_mg_per_100g"};
    std::set<std::string> flavonoids;
    for (const Node* n : match(q.label, EntityKind::flavonoid, node_kind::kFlavonoid)) {
      flavonoids.insert(n->iri);
    }
    if (flavonoids.empty()) return;
    for (const auto& row : derived_contains(graph_)) {
      if (flavonoids.contains(row.flavonoid_iri)) {
        rows_.insert({label_of(row.food_iri), format_decimal(row.mean_mg_per_100g)});
      }
    }
  }

  static std::string prop_text(const nlohmann::json& props, const char* name) {
    auto it = props.find(name);
    if (it == props.end() || it->is_null()) return {};
    return it->is_string() ? it->get<std::string>() : it->dump();
  }

  void evaluate(const DiseasesOfFlavonoid& q) {
    result_.table.columns = {"disease", "effect", "citation"};
    for (const Node* v : match(q.label, EntityKind::flavonoid, node_kind::kFlavonoid)) {
      for (const Edge* e :
           graph_.incident(v->iri, edge_kind::kHasAssociatedDisease, Direction::out)) {
        rows_.insert({label_of(e->target), prop_text(e->props, "effect"),
                      prop_text(e->props, "citation_key")});
      }
    }
  }

  void evaluate(const FoodsForDisease& q) {
    result_.table.columns = {"food", "flavonoid"};
    std::set<std::string> flavonoids;
    for (const Node* d : match(q.label, EntityKind::disease, node_kind::kDisease)) {
      for (const Edge* e :
           graph_.incident(d->iri, edge_kind::kHasAssociatedDisease, Direction::in)) {
        flavonoids.insert(e->source);
      }
    }
    if (flavonoids.empty()) return;
    for (const auto& row : derived_contains(graph_)) {
      if (flavonoids.contains(row.flavonoid_iri)) {
        rows_.insert({label_of(row.food_iri), label_of(row.flavonoid_iri)});
      }
    }
  }

  void evaluate(const Neighbors& q) {
    result_.table.columns = {"iri", "kind", "label"};
    if (!graph_.find_node(q.iri)) {
      result_.warnings.push_back("no node with IRI '" + q.iri + "'");
      return;
    }
    for (const Node* n : neighbors(graph_, q.iri, q.edge_kind, q.direction)) {
      rows_.insert({n->iri, n->kind, n->label});
    }
  }

  const KnowledgeGraph& graph_;
  const Normalizer& normalizer_;
  QueryResult result_;
  std::set<std::vector<std::string>> rows_;
};

}  // namespace

QueryAst parse_query(std::string_view text, const Schema& schema) {
  return QueryParser(text, schema).parse();
}

QueryResult execute(const QueryAst& ast, const KnowledgeGraph& graph,
                    const Normalizer& normalizer) {
  return Executor(graph, normalizer).run(ast);
}

std::string write_result_tsv(const ResultTable& table) {
  auto append = [](std::string& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out.push_back('\t');
      for (char c : cells[i]) out.push_back(c == '\t' || c == '\n' || c == '\r' ? ' ' : c);
    }
    out.push_back('\n');
  };
  std::string out;
  append(out, table.columns);
  for (const auto& row : table.rows) append(out, row);
  return out;
}

}  // namespace flavokg
