#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flavokg/graph.hpp"
#include "flavokg/owl.hpp"
#include "flavokg/prefixes.hpp"

namespace flavokg {

// Template directives, matched case-sensitively:
//   ID, LABEL, TYPE, "SC %", "A <property CURIE>", "R <property CURIE>"
// SC, A and R accept a trailing " SPLIT=<char>" for multi-valued cells. An
// empty directive marks a column that is ignored.
enum class DirectiveKind { id, label, type, subclass, annotation, relation, ignore };

struct Directive {
  DirectiveKind kind = DirectiveKind::ignore;
  std::string property;          // annotation / relation property CURIE
  std::optional<char> split;     // SPLIT=<char>
  std::string text;              // verbatim directive string

  bool operator==(const Directive&) const = default;
};

// Throws Error quoting the directive verbatim if it is not recognized.
Directive parse_directive(std::string_view text);

struct TemplateColumn {
  std::string header;
  Directive directive;

  bool operator==(const TemplateColumn&) const = default;
};

struct TemplateSheet {
  std::string name;
  std::vector<TemplateColumn> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> row_lines;  // CSV line of each row, 0 if synthesized

  std::size_t id_column() const;
};

// Row 1: header names; row 2: directives; remaining rows: data.
TemplateSheet parse_template(std::string_view csv_text, std::string_view name = {});
std::string write_template(const TemplateSheet& sheet);

// Per row: ClassDeclaration, plus Label / SubClassOf / Annotation / Relation
// axioms for every non-empty cell of the matching columns. Throws Error naming
// any prefix the map cannot resolve.
OwlDocument expand_template(const TemplateSheet& sheet, const PrefixMap& prefixes);

// Resolves a template cell: bound CURIE, <IRI> or a bare absolute IRI.
std::string resolve_term(std::string_view term, const PrefixMap& prefixes);

struct LayeredTemplates {
  std::vector<TemplateSheet> layer1;  // vocabulary: ID + LABEL per node kind
  std::vector<TemplateSheet> layer2;  // axioms: hierarchy, xrefs, relations
  std::vector<TemplateSheet> layer3;  // food rows joined with their flavonoids
};

// Local property IRI for a relation name, e.g. ns + "has_component".
std::string local_property(std::string_view ns, std::string_view name);

inline constexpr std::string_view kContainsFlavonoid = "contains_flavonoid";
inline constexpr std::string_view kAssociatedDiseaseNote = "associated_disease";

// Sheet rows are sorted by IRI; every IRI is compacted through `prefixes`
// when possible.
LayeredTemplates graph_to_templates(const KnowledgeGraph& graph, const PrefixMap& prefixes,
                                    std::string_view ns);

// Layer 1 merged into a vocabulary document, layer 2 merged onto it, then
// layer 3 merged onto the result.
OwlDocument build_ontology(const LayeredTemplates& layers, const PrefixMap& prefixes);

}  // namespace flavokg
