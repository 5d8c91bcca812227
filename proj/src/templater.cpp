#include "flavokg/templater.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "flavokg/csv.hpp"
#include "flavokg/error.hpp"
#include "flavokg/recycle.hpp"

namespace flavokg {
namespace {

std::vector<std::string> split_cell(const std::string& cell, std::optional<char> split) {
  std::vector<std::string> out;
  if (!split) {
    if (!cell.empty()) out.push_back(cell);
    return out;
  }
  std::size_t start = 0;
  while (start <= cell.size()) {
    std::size_t pos = cell.find(*split, start);
    std::string part = cell.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
    if (!part.empty()) out.push_back(std::move(part));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out.push_back(sep);
    out += p;
  }
  return out;
}

}  // namespace

Directive parse_directive(std::string_view text) {
  Directive d;
  d.text = std::string(text);
  if (text.empty()) return d;
  if (text == "ID") { d.kind = DirectiveKind::id; return d; }
  if (text == "LABEL") { d.kind = DirectiveKind::label; return d; }
  if (text == "TYPE") { d.kind = DirectiveKind::type; return d; }

  std::string_view body = text;
  constexpr std::string_view kSplit = " SPLIT=";
  std::size_t split_pos = body.rfind(kSplit);
  if (split_pos != std::string_view::npos) {
    std::string_view sep = body.substr(split_pos + kSplit.size());
    if (sep.size() != 1) {
      throw Error("unknown directive '" + d.text + "' (SPLIT takes one character)");
    }
    d.split = sep[0];
    body = body.substr(0, split_pos);
  }
  if (body == "SC %") {
    d.kind = DirectiveKind::subclass;
    return d;
  }
  if (body.size() > 2 && (body.starts_with("A ") || body.starts_with("R "))) {
    std::string property(body.substr(2));
    if (!property.empty() && property.find(' ') == std::string::npos) {
      d.kind = body[0] == 'A' ? DirectiveKind::annotation : DirectiveKind::relation;
      d.property = std::move(property);
      return d;
    }
  }
  throw Error("unknown directive '" + d.text + "'");
}

std::size_t TemplateSheet::id_column() const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].directive.kind == DirectiveKind::id) return i;
  }
  throw Error("template '" + name + "' has no ID column");
}

TemplateSheet parse_template(std::string_view csv_text, std::string_view name) {
  std::string file(name);
  auto rows = csv::parse(csv_text, name);
  if (rows.size() < 2) {
    throw ParseError(file, rows.empty() ? 1 : rows.front().line,
                     "template needs a header row and a directive row");
  }
  const auto& headers = rows[0].cells;
  const auto& directives = rows[1].cells;
  if (headers.size() != directives.size()) {
    throw ParseError(file, rows[1].line, "directive row width differs from header row");
  }
  TemplateSheet sheet;
  sheet.name = file;
  std::size_t ids = 0;
  for (std::size_t i = 0; i < headers.size(); ++i) {
    Directive d;
    try {
      d = parse_directive(directives[i]);
    } catch (const Error& e) {
      throw ParseError(file, rows[1].line, e.what());
    }
    if (d.kind == DirectiveKind::id) ++ids;
    sheet.columns.push_back({headers[i], std::move(d)});
  }
  if (ids != 1) {
    throw ParseError(file, rows[1].line,
                     "template must have exactly one ID column (found " + std::to_string(ids) + ")");
  }
  std::size_t id_col = sheet.id_column();
  for (std::size_t r = 2; r < rows.size(); ++r) {
    auto& row = rows[r];
    if (row.cells.size() != sheet.columns.size()) {
      throw ParseError(file, row.line,
                       "row has " + std::to_string(row.cells.size()) + " cells, expected " +
                           std::to_string(sheet.columns.size()));
    }
    if (csv::trim(row.cells[id_col]).empty()) {
      throw ParseError(file, row.line, "empty ID cell");
    }
    sheet.rows.push_back(std::move(row.cells));
    sheet.row_lines.push_back(row.line);
  }
  return sheet;
}

std::string write_template(const TemplateSheet& sheet) {
  std::string out;
  std::vector<std::string> headers, directives;
  for (const auto& c : sheet.columns) {
    headers.push_back(c.header);
    directives.push_back(c.directive.text);
  }
  csv::append_row(out, headers);
  csv::append_row(out, directives);
  for (const auto& row : sheet.rows) csv::append_row(out, row);
  return out;
}

std::string resolve_term(std::string_view raw, const PrefixMap& prefixes) {
  std::string term = csv::trim(raw);
  if (term.size() >= 2 && term.front() == '<' && term.back() == '>') {
    return term.substr(1, term.size() - 2);
  }
  std::size_t colon = term.find(':');
  if (colon == std::string::npos) {
    throw Error("'" + term + "' is neither a CURIE nor an IRI");
  }
  if (auto iri = prefixes.expand(term)) return *iri;
  if (term.find("://") != std::string::npos) return term;
  throw Error("unresolvable prefix '" + term.substr(0, colon) + "' in '" + term + "'");
}

OwlDocument expand_template(const TemplateSheet& sheet, const PrefixMap& prefixes) {
  OwlDocument doc;
  const std::size_t id_col = sheet.id_column();
  // Property IRIs are resolved once per column.
  std::vector<std::string> properties(sheet.columns.size());
  for (std::size_t c = 0; c < sheet.columns.size(); ++c) {
    const auto& d = sheet.columns[c].directive;
    if (d.kind == DirectiveKind::annotation || d.kind == DirectiveKind::relation) {
      properties[c] = resolve_term(d.property, prefixes);
    }
  }
  for (std::size_t r = 0; r < sheet.rows.size(); ++r) {
    const auto& row = sheet.rows[r];
    std::size_t line = r < sheet.row_lines.size() ? sheet.row_lines[r] : 0;
    try {
      if (row.size() != sheet.columns.size()) throw Error("row width differs from column count");
      std::string subject = resolve_term(row[id_col], prefixes);
      for (std::size_t c = 0; c < row.size(); ++c) {
        const auto& d = sheet.columns[c].directive;
        const std::string& cell = row[c];
        if (d.kind == DirectiveKind::type && !cell.empty() && cell != "class" &&
            cell != "owl:Class") {
          throw Error("unsupported TYPE '" + cell + "'");
        }
        if (cell.empty()) continue;
        switch (d.kind) {
          case DirectiveKind::label:
            doc.insert(Axiom::label(subject, cell));
            break;
          case DirectiveKind::subclass:
            for (const auto& v : split_cell(cell, d.split)) {
              doc.insert(Axiom::subclass_of(subject, resolve_term(v, prefixes)));
            }
            break;
          case DirectiveKind::annotation:
            for (const auto& v : split_cell(cell, d.split)) {
              doc.insert(Axiom::annotation(subject, properties[c], v));
            }
            break;
          case DirectiveKind::relation:
            for (const auto& v : split_cell(cell, d.split)) {
              doc.insert(Axiom::relation(subject, properties[c], resolve_term(v, prefixes)));
            }
            break;
          default:
            break;
        }
      }
      doc.insert(Axiom::class_declaration(std::move(subject)));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(sheet.name, line, e.what());
    }
  }
  return doc;
}

std::string local_property(std::string_view ns, std::string_view name) {
  return std::string(ns) + std::string(name);
}

LayeredTemplates graph_to_templates(const KnowledgeGraph& graph, const PrefixMap& prefixes,
                                    std::string_view ns) {
  auto compact = [&](const std::string& iri) {
    if (auto curie = prefixes.compact(iri)) return *curie;
    return iri;  // resolve_term accepts bare absolute IRIs
  };
  auto property_curie = [&](std::string_view name) {
    return compact(local_property(ns, name));
  };

  // Every node kind except identifiers, standard kinds first so that empty
  // graphs still produce one (empty) sheet per kind.
  std::set<std::string> kinds;
  for (const auto& k : Schema::standard().node_kinds()) kinds.insert(k);
  for (const auto& n : graph.nodes()) kinds.insert(n.kind);
  kinds.erase(std::string(node_kind::kIdentifier));

  LayeredTemplates layers;
  for (const auto& kind : kinds) {
    auto members = graph.nodes_of_kind(kind);

    TemplateSheet vocab;
    vocab.name = "layer1_" + kind;
    vocab.columns = {{"ID", parse_directive("ID")}, {"Label", parse_directive("LABEL")}};
    for (const Node* n : members) vocab.rows.push_back({compact(n->iri), n->label});
    layers.layer1.push_back(std::move(vocab));

    // Which optional columns this kind needs.
    bool has_parent = false;
    bool has_disease = false;
    std::set<std::string> relations;
    for (const Node* n : members) {
      if (!graph.incident(n->iri, edge_kind::kParentOf, Direction::in).empty()) has_parent = true;
    }
    for (const Edge& e : graph.edges()) {
      if (e.kind == edge_kind::kParentOf || e.kind == edge_kind::kHasId) continue;
      const Node* s = graph.find_node(e.source);
      if (s == nullptr || s->kind != kind) continue;
      relations.insert(e.kind);
      if (e.kind == edge_kind::kHasAssociatedDisease) has_disease = true;
    }

    TemplateSheet axioms;
    axioms.name = "layer2_" + kind;
    axioms.columns.push_back({"ID", parse_directive("ID")});
    if (has_parent) axioms.columns.push_back({"Parent", parse_directive("SC % SPLIT=|")});
    axioms.columns.push_back(
        {"Xrefs", parse_directive("A " + compact(std::string(kOboInOwl) + "hasDbXref") + " SPLIT=|")});
    if (has_disease) {
      axioms.columns.push_back(
          {"Associated diseases",
           parse_directive("A " + property_curie(kAssociatedDiseaseNote) + " SPLIT=|")});
    }
    for (const auto& rel : relations) {
      axioms.columns.push_back({rel, parse_directive("R " + property_curie(rel) + " SPLIT=|")});
    }

    for (const Node* n : members) {
      std::vector<std::string> row;
      row.push_back(compact(n->iri));
      if (has_parent) {
        std::vector<std::string> parents;
        for (const Edge* e : graph.incident(n->iri, edge_kind::kParentOf, Direction::in)) {
          parents.push_back(compact(e->source));
        }
        std::sort(parents.begin(), parents.end());
        row.push_back(join(parents, '|'));
      }
      std::vector<std::string> xrefs;
      for (const Edge* e : graph.incident(n->iri, edge_kind::kHasId, Direction::out)) {
        const Node* id = graph.find_node(e->target);
        xrefs.push_back(id != nullptr ? id->label : e->target);
      }
      std::sort(xrefs.begin(), xrefs.end());
      row.push_back(join(xrefs, '|'));
      if (has_disease) {
        std::vector<std::string> labels;
        for (const Node* d : neighbors(graph, n->iri, edge_kind::kHasAssociatedDisease, Direction::out)) {
          labels.push_back(d->label);
        }
        std::sort(labels.begin(), labels.end());
        labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
        row.push_back(join(labels, '|'));
      }
      for (const auto& rel : relations) {
        std::vector<std::string> targets;
        for (const Edge* e : graph.incident(n->iri, rel, Direction::out)) {
          targets.push_back(compact(e->target));
        }
        std::sort(targets.begin(), targets.end());
        row.push_back(join(targets, '|'));
      }
      axioms.rows.push_back(std::move(row));
    }
    layers.layer2.push_back(std::move(axioms));
  }

  TemplateSheet join_sheet;
  join_sheet.name = "layer3_food_flavonoid";
  join_sheet.columns = {{"ID", parse_directive("ID")},
                        {"Label", parse_directive("LABEL")},
                        {"Flavonoids", parse_directive("R " + property_curie(kContainsFlavonoid) +
                                                       " SPLIT=|")}};
  std::map<std::string, std::vector<std::string>> contains;
  for (const auto& row : derived_contains(graph)) {
    contains[row.food_iri].push_back(compact(row.flavonoid_iri));
  }
  for (const Node* food : graph.nodes_of_kind(node_kind::kFood)) {
    auto& flavonoids = contains[food->iri];
    std::sort(flavonoids.begin(), flavonoids.end());
    flavonoids.erase(std::unique(flavonoids.begin(), flavonoids.end()), flavonoids.end());
    join_sheet.rows.push_back({compact(food->iri), food->label, join(flavonoids, '|')});
  }
  layers.layer3.push_back(std::move(join_sheet));
  return layers;
}

OwlDocument build_ontology(const LayeredTemplates& layers, const PrefixMap& prefixes) {
  auto merge_layer = [&](OwlDocument base, const std::vector<TemplateSheet>& sheets) {
    std::vector<OwlDocument> docs{std::move(base)};
    for (const auto& sheet : sheets) docs.push_back(expand_template(sheet, prefixes));
    return merge_documents(docs);
  };
  OwlDocument vocabulary = merge_layer({}, layers.layer1);
  OwlDocument axioms = merge_layer(std::move(vocabulary), layers.layer2);
  return merge_layer(std::move(axioms), layers.layer3);
}

}  // namespace flavokg
