#include "flavokg/validate.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "flavokg/error.hpp"
#include "flavokg/ingest.hpp"

namespace flavokg {

Severity severity_of(std::string_view code) {
  using namespace finding_code;
  for (auto c : {kCycle, kDanglingEdge, kDuplicateId, kMultipleParents, kLabelConflict,
                 kUnknownSubclass}) {
    if (code == c) return Severity::error;
  }
  for (auto c : {kOrphanNode, kRedundantEdge, kUnmappedTerm}) {
    if (code == c) return Severity::warning;
  }
  throw Error("unknown finding code '" + std::string(code) + "'");
}

std::string_view to_string(Severity severity) {
  return severity == Severity::error ? "error" : "warning";
}

Finding make_finding(std::string_view code, std::string subject, std::string message) {
  return {std::string(code), severity_of(code), std::move(subject), std::move(message)};
}

void sort_findings(std::vector<Finding>& findings) {
  std::sort(findings.begin(), findings.end(), [](const Finding& a, const Finding& b) {
    return std::tie(a.code, a.subject, a.message) < std::tie(b.code, b.subject, b.message);
  });
  findings.erase(std::unique(findings.begin(), findings.end()), findings.end());
}

namespace {

bool is_entity_kind(std::string_view kind) {
  return parse_entity_kind(kind).has_value();
}

// True if `to` is reachable from `from` over parent_of without using edge
// `skip`.
bool reachable_without(const std::unordered_map<std::string, std::vector<std::size_t>>& out,
                       const std::vector<const Edge*>& edges, const std::string& from,
                       const std::string& to, std::size_t skip) {
  std::unordered_set<std::string> seen{from};
  std::vector<std::string> stack{from};
  while (!stack.empty()) {
    std::string v = std::move(stack.back());
    stack.pop_back();
    auto it = out.find(v);
    if (it == out.end()) continue;
    for (std::size_t i : it->second) {
      if (i == skip) continue;
      const std::string& w = edges[i]->target;
      if (w == to) return true;
      if (seen.insert(w).second) stack.push_back(w);
    }
  }
  return false;
}

}  // namespace

std::vector<Finding> check_graph(const KnowledgeGraph& graph, const GraphCheckOptions& options) {
  using namespace finding_code;
  std::vector<Finding> findings;

  std::map<std::string, std::size_t> iri_counts;
  for (const Node& n : graph.nodes()) ++iri_counts[n.iri];
  for (const auto& [iri, count] : iri_counts) {
    if (count > 1) {
      findings.push_back(make_finding(kDuplicateId, iri,
                                      std::to_string(count) + " node rows share this IRI"));
    }
  }

  for (const Edge& e : graph.edges()) {
    bool source = graph.find_node(e.source) != nullptr;
    bool target = graph.find_node(e.target) != nullptr;
    if (source && target) continue;
    std::string missing = !source && !target ? "source and target" : !source ? "source" : "target";
    findings.push_back(make_finding(kDanglingEdge, e.source + " " + e.target,
                                    e.kind + " edge with missing " + missing));
  }

  for (const Node* n : graph.nodes_of_kind(node_kind::kFlavonoidSubclass)) {
    std::optional<std::string> key;
    try {
      key = options.subclasses.resolve_key(
          canonicalize_label(n->label, EntityKind::flavonoid_subclass));
    } catch (const Error&) {
    }
    if (!key) {
      findings.push_back(make_finding(kUnknownSubclass, n->iri,
                                      "subclass '" + n->label + "' is not a known subclass"));
    }
  }

  for (auto kind : {node_kind::kFood, node_kind::kFlavonoid}) {
    for (const Node* n : graph.nodes_of_kind(kind)) {
      std::set<std::string> parents;
      for (const Edge* e : graph.incident(n->iri, edge_kind::kParentOf, Direction::in)) {
        parents.insert(e->source);
      }
      if (parents.empty()) {
        findings.push_back(make_finding(kOrphanNode, n->iri,
                                        std::string(kind) + " '" + n->label + "' has no parent"));
      } else if (parents.size() > 1) {
        std::string list;
        for (const auto& p : parents) list += (list.empty() ? "" : ", ") + p;
        findings.push_back(make_finding(kMultipleParents, n->iri,
                                        std::string(kind) + " '" + n->label +
                                            "' has parents " + list));
      }
    }
  }

  for (const auto& component : cyclic_components(graph, edge_kind::kParentOf)) {
    std::string list;
    for (const auto& v : component) list += (list.empty() ? "" : ", ") + v;
    findings.push_back(make_finding(kCycle, component.front(), "parent_of cycle through " + list));
  }

  std::vector<const Edge*> parent_edges;
  std::unordered_map<std::string, std::vector<std::size_t>> out;
  for (const Edge& e : graph.edges()) {
    if (e.kind != edge_kind::kParentOf) continue;
    out[e.source].push_back(parent_edges.size());
    parent_edges.push_back(&e);
  }
  for (std::size_t i = 0; i < parent_edges.size(); ++i) {
    const Edge& e = *parent_edges[i];
    if (e.source == e.target) continue;
    // A node with a single incoming parent_of cannot be reached another way.
    if (graph.incident(e.target, edge_kind::kParentOf, Direction::in).size() < 2) continue;
    if (reachable_without(out, parent_edges, e.source, e.target, i)) {
      findings.push_back(make_finding(kRedundantEdge, e.source + " " + e.target,
                                      "parent_of edge is implied by other parent_of edges"));
    }
  }

  for (const Node& n : graph.nodes()) {
    if (!is_entity_kind(n.kind)) continue;
    if (graph.incident(n.iri, edge_kind::kHasId, Direction::out).empty()) {
      findings.push_back(make_finding(kUnmappedTerm, n.iri,
                                      n.kind + " '" + n.label + "' has a minted IRI"));
    }
  }

  sort_findings(findings);
  return findings;
}

std::vector<Finding> check_ontology(const OwlDocument& doc) {
  using namespace finding_code;
  std::vector<Finding> findings;
  std::map<std::string, std::set<std::string>> labels;
  std::set<std::string> declared, connected;
  for (const Axiom& a : doc) {
    switch (a.kind) {
      case AxiomKind::class_declaration:
        declared.insert(a.subject);
        break;
      case AxiomKind::label:
        labels[a.subject].insert(a.object);
        break;
      case AxiomKind::subclass_of:
      case AxiomKind::relation:
        connected.insert(a.subject);
        connected.insert(a.object);
        break;
      case AxiomKind::annotation:
        connected.insert(a.subject);
        break;
    }
  }
  for (const auto& [iri, set] : labels) {
    if (set.size() < 2) continue;
    std::string list;
    for (const auto& l : set) list += (list.empty() ? "'" : ", '") + l + "'";
    findings.push_back(make_finding(kLabelConflict, iri, "labels " + list));
  }
  for (const auto& iri : declared) {
    if (!connected.contains(iri)) {
      findings.push_back(make_finding(kOrphanNode, iri, "class has no hierarchy, relation or annotation"));
    }
  }
  sort_findings(findings);
  return findings;
}

bool has_errors(std::span<const Finding> findings) {
  return std::any_of(findings.begin(), findings.end(),
                     [](const Finding& f) { return f.severity == Severity::error; });
}

std::string write_findings(std::span<const Finding> findings) {
  auto clean = [](std::string_view s) {
    std::string out(s);
    for (char& c : out) {
      if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    }
    return out;
  };
  std::string out = "code\tseverity\tsubject\tmessage\n";
  for (const auto& f : findings) {
    out += f.code + "\t" + std::string(to_string(f.severity)) + "\t" + clean(f.subject) + "\t" +
           clean(f.message) + "\n";
  }
  return out;
}

CoverageStats coverage_stats(const KnowledgeGraph& graph,
                             std::span<const MappingResult> mappings) {
  CoverageStats stats;
  for (const Node& n : graph.nodes()) ++stats.nodes_by_kind[n.kind];
  for (const Edge& e : graph.edges()) ++stats.edges_by_kind[e.kind];
  stats.node_count = graph.nodes().size();
  stats.edge_count = graph.edges().size();
  auto assoc = stats.edges_by_kind.find(std::string(edge_kind::kHasAssociatedDisease));
  stats.association_count = assoc == stats.edges_by_kind.end() ? 0 : assoc->second;
  for (const auto& m : mappings) {
    auto& [mapped, total] = stats.mapping_by_kind[m.kind];
    ++total;
    if (m.outcome != MatchOutcome::minted) ++mapped;
  }
  return stats;
}

std::string write_coverage(const CoverageStats& stats) {
  std::string out = "metric\tkey\tvalue\n";
  out += "nodes\ttotal\t" + std::to_string(stats.node_count) + "\n";
  for (const auto& [kind, n] : stats.nodes_by_kind) {
    out += "nodes\t" + kind + "\t" + std::to_string(n) + "\n";
  }
  out += "edges\ttotal\t" + std::to_string(stats.edge_count) + "\n";
  for (const auto& [kind, n] : stats.edges_by_kind) {
    out += "edges\t" + kind + "\t" + std::to_string(n) + "\n";
  }
  for (const auto& [kind, counts] : stats.mapping_by_kind) {
    double fraction = counts.second == 0 ? 0.0
                                         : static_cast<double>(counts.first) /
                                               static_cast<double>(counts.second);
    out += "mapped_fraction\t" + std::string(to_string(kind)) + "\t" + format_decimal(fraction) +
           "\n";
  }
  out += "associations\ttotal\t" + std::to_string(stats.association_count) + "\n";
  return out;
}

}  // namespace flavokg
