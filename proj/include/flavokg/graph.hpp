#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "flavokg/ingest.hpp"
#include "flavokg/normalize.hpp"
#include "flavokg/prefixes.hpp"
#include "flavokg/recycle.hpp"

namespace flavokg {

namespace node_kind {
inline constexpr std::string_view kFoodGroup = "food_group";
inline constexpr std::string_view kFood = "food";
inline constexpr std::string_view kComposition = "composition";
inline constexpr std::string_view kFlavonoidSubclass = "flavonoid_subclass";
inline constexpr std::string_view kFlavonoid = "flavonoid";
inline constexpr std::string_view kDisease = "disease";
inline constexpr std::string_view kDrug = "drug";
inline constexpr std::string_view kClinicalTrial = "clinical_trial";
inline constexpr std::string_view kIdentifier = "identifier";
}  // namespace node_kind

namespace edge_kind {
inline constexpr std::string_view kParentOf = "parent_of";
inline constexpr std::string_view kHasId = "has_id";
inline constexpr std::string_view kHasComposition = "has_composition";
inline constexpr std::string_view kHasComponent = "has_component";
inline constexpr std::string_view kHasAssociatedDisease = "has_associated_disease";
inline constexpr std::string_view kFormulatedFrom = "formulated_from";
inline constexpr std::string_view kEvaluatedIn = "evaluated_in";
inline constexpr std::string_view kTargets = "targets";
}  // namespace edge_kind

struct Node {
  std::string iri;
  std::string kind;
  std::string label;

  auto operator<=>(const Node&) const = default;
};

struct Edge {
  std::string source;
  std::string kind;
  std::string target;
  nlohmann::json props = nlohmann::json::object();

  bool operator==(const Edge&) const = default;
};

enum class Direction { out, in };

// Allowed (source kind, edge kind, target kind) triples. A source kind of "*"
// matches every node kind except identifier.
class Schema {
 public:
  static Schema standard();

  void add_rule(std::string_view edge, std::string_view source, std::string_view target);
  // Extension file rows: edge_name TAB source_kind TAB target_kind. Node kinds
  // mentioned become known node kinds.
  void extend(std::string_view tsv_text, std::string_view file_name = {});

  bool allows(std::string_view source, std::string_view edge,
              std::string_view target) const;
  bool has_node_kind(std::string_view kind) const;
  bool has_edge_kind(std::string_view kind) const;
  std::vector<std::string> node_kinds() const;
  std::vector<std::string> edge_kinds() const;

 private:
  struct Rule {
    std::string edge, source, target;
  };
  std::vector<Rule> rules_;
  std::set<std::string, std::less<>> node_kinds_;
  std::set<std::string, std::less<>> edge_kinds_;
};

// Immutable node/edge store with adjacency indexes. Nodes are kept sorted by
// IRI and edges by (source, kind, target). Graphs built by build_graph satisfy
// every schema invariant; graphs loaded from CSV may not (see check_graph).
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;

  // Sorts and indexes without validating anything.
  static KnowledgeGraph from_parts(std::vector<Node> nodes, std::vector<Edge> edges);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }

  const Node* find_node(std::string_view iri) const;
  std::vector<const Node*> nodes_of_kind(std::string_view kind) const;

  // Edges incident to `iri` of one kind; works for dangling endpoints too.
  std::vector<const Edge*> incident(std::string_view iri, std::string_view kind,
                                    Direction direction) const;

 private:
  static std::string adjacency_key(std::string_view iri, std::string_view kind);

  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, std::size_t> node_index_;
  std::unordered_map<std::string, std::vector<std::size_t>> out_;
  std::unordered_map<std::string, std::vector<std::size_t>> in_;
};

// The five seeded flavonoid subclasses plus any declared extras. The
// misspelling "Flavnaones" resolves to Flavanones.
class SubclassRegistry {
 public:
  SubclassRegistry();

  void declare(std::string_view label);
  void add_synonym(std::string_view synonym, std::string_view canonical_key);

  // Canonical key of the subclass a label refers to, if known.
  std::optional<std::string> resolve_key(std::string_view key) const;
  // (canonical key, display label) for every known subclass, sorted by key.
  const std::map<std::string, std::string>& subclasses() const { return subclasses_; }

 private:
  std::map<std::string, std::string> subclasses_;
  std::map<std::string, std::string> synonyms_;
};

struct BuildInputs {
  std::span<const CanonicalEntity> entities;
  std::span<const MappingResult> mappings;
  std::span<const FoodRecord> foods;
  std::span<const ContentRecord> contents;
  std::span<const AssociationRecord> associations;
  std::span<const DrugRecord> drugs;
};

struct BuildOptions {
  std::string ns = "http://example.org/ff/";
  Schema schema = Schema::standard();
  SubclassRegistry subclasses;
  PrefixMap prefixes;  // used to expand identifier CURIEs
};

std::string composition_iri(std::string_view food_iri);
std::string trial_iri(std::string_view trial_id, std::string_view ns);

KnowledgeGraph build_graph(const BuildInputs& inputs, const BuildOptions& options = {});

// Adjacent nodes sorted by (label, iri). Throws Error for an unknown node.
std::vector<const Node*> neighbors(const KnowledgeGraph& graph, std::string_view node_iri,
                                   std::string_view edge_kind, Direction direction);

struct ContainsRow {
  std::string food_iri;
  std::string flavonoid_iri;
  double mean_mg_per_100g;

  auto operator<=>(const ContainsRow&) const = default;
};

// has_composition followed by has_component, sorted.
std::vector<ContainsRow> derived_contains(const KnowledgeGraph& graph);

// Pairs (a, b), a != b, such that b is reachable from a over `edge_kind`.
std::set<std::pair<std::string, std::string>> transitive_closure(
    const KnowledgeGraph& graph, std::string_view edge_kind);

// Strongly connected components of the `edge_kind` subgraph that contain a
// cycle (size > 1 or a self loop), each sorted, listed by smallest member.
std::vector<std::vector<std::string>> cyclic_components(const KnowledgeGraph& graph,
                                                        std::string_view edge_kind);

struct GraphCsv {
  std::string nodes;  // iri,kind,label
  std::string edges;  // source,kind,target,props_json
};

GraphCsv export_graph_csv(const KnowledgeGraph& graph);

// Lenient reader for exported CSVs: duplicate IRIs, dangling edges and
// schema violations are loaded as-is so the validator can report them.
KnowledgeGraph import_graph_csv(std::string_view nodes_csv, std::string_view edges_csv);

// FNV-1a over the exported CSV text.
std::uint64_t graph_fingerprint(const KnowledgeGraph& graph);

}  // namespace flavokg
