#include "flavokg/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_set>

#include "flavokg/csv.hpp"
#include "flavokg/error.hpp"

namespace flavokg {

// --- Schema ---------------------------------------------------------------

Schema Schema::standard() {
  using namespace node_kind;
  using namespace edge_kind;
  Schema schema;
  for (auto kind : {kFoodGroup, kFood, kComposition, kFlavonoidSubclass, kFlavonoid,
                    kDisease, kDrug, kClinicalTrial, kIdentifier}) {
    schema.node_kinds_.emplace(kind);
  }
  schema.add_rule(kParentOf, kFoodGroup, kFood);
  schema.add_rule(kParentOf, kFlavonoidSubclass, kFlavonoid);
  schema.add_rule(kHasId, "*", kIdentifier);
  schema.add_rule(kHasComposition, kFood, kComposition);
  schema.add_rule(kHasComponent, kComposition, kFlavonoid);
  schema.add_rule(kHasAssociatedDisease, kFlavonoid, kDisease);
  schema.add_rule(kFormulatedFrom, kDrug, kComposition);
  schema.add_rule(kEvaluatedIn, kDrug, kClinicalTrial);
  schema.add_rule(kTargets, kClinicalTrial, kDisease);
  return schema;
}

void Schema::add_rule(std::string_view edge, std::string_view source,
                      std::string_view target) {
  rules_.push_back({std::string(edge), std::string(source), std::string(target)});
  edge_kinds_.emplace(edge);
  if (source != "*") node_kinds_.emplace(source);
  node_kinds_.emplace(target);
}

void Schema::extend(std::string_view tsv_text, std::string_view file_name) {
  for (const auto& row : csv::split_tsv(tsv_text)) {
    if (row.cells.empty() || row.cells[0].starts_with('#')) continue;
    if (row.cells.size() != 3) {
      throw ParseError(std::string(file_name), row.line,
                       "expected edge_name TAB source_kind TAB target_kind");
    }
    add_rule(csv::trim(row.cells[0]), csv::trim(row.cells[1]), csv::trim(row.cells[2]));
  }
}

bool Schema::allows(std::string_view source, std::string_view edge,
                    std::string_view target) const {
  for (const auto& rule : rules_) {
    if (rule.edge != edge || rule.target != target) continue;
    if (rule.source == source) return true;
    if (rule.source == "*" && source != node_kind::kIdentifier) return true;
  }
  return false;
}

bool Schema::has_node_kind(std::string_view kind) const {
  return node_kinds_.find(kind) != node_kinds_.end();
}

bool Schema::has_edge_kind(std::string_view kind) const {
  return edge_kinds_.find(kind) != edge_kinds_.end();
}

std::vector<std::string> Schema::node_kinds() const {
  return {node_kinds_.begin(), node_kinds_.end()};
}

std::vector<std::string> Schema::edge_kinds() const {
  return {edge_kinds_.begin(), edge_kinds_.end()};
}

// --- KnowledgeGraph -------------------------------------------------------

std::string KnowledgeGraph::adjacency_key(std::string_view iri, std::string_view kind) {
  std::string key(iri);
  key.push_back('\0');
  key.append(kind);
  return key;
}

KnowledgeGraph KnowledgeGraph::from_parts(std::vector<Node> nodes,
                                          std::vector<Edge> edges) {
  KnowledgeGraph graph;
  std::stable_sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) {
    return std::tie(a.iri, a.kind, a.label) < std::tie(b.iri, b.kind, b.label);
  });
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.source, a.kind, a.target) < std::tie(b.source, b.kind, b.target);
  });
  graph.nodes_ = std::move(nodes);
  graph.edges_ = std::move(edges);
  graph.node_index_.reserve(graph.nodes_.size());
  for (std::size_t i = 0; i < graph.nodes_.size(); ++i) {
    graph.node_index_.try_emplace(graph.nodes_[i].iri, i);
  }
  for (std::size_t i = 0; i < graph.edges_.size(); ++i) {
    const Edge& e = graph.edges_[i];
    graph.out_[adjacency_key(e.source, e.kind)].push_back(i);
    graph.in_[adjacency_key(e.target, e.kind)].push_back(i);
  }
  return graph;
}

const Node* KnowledgeGraph::find_node(std::string_view iri) const {
  auto it = node_index_.find(std::string(iri));
  return it == node_index_.end() ? nullptr : &nodes_[it->second];
}

std::vector<const Node*> KnowledgeGraph::nodes_of_kind(std::string_view kind) const {
  std::vector<const Node*> out;
  for (const auto& node : nodes_) {
    if (node.kind == kind) out.push_back(&node);
  }
  return out;
}

std::vector<const Edge*> KnowledgeGraph::incident(std::string_view iri,
                                                  std::string_view kind,
                                                  Direction direction) const {
  const auto& index = direction == Direction::out ? out_ : in_;
  std::vector<const Edge*> out;
  auto it = index.find(adjacency_key(iri, kind));
  if (it == index.end()) return out;
  out.reserve(it->second.size());
  for (std::size_t i : it->second) out.push_back(&edges_[i]);
  return out;
}

// --- SubclassRegistry -----------------------------------------------------

SubclassRegistry::SubclassRegistry() {
  for (auto label : {"Anthocyanidins", "Flavan-3-ols", "Flavanones", "Flavones",
                     "Flavonols"}) {
    declare(label);
  }
  add_synonym("Flavnaones", "flavanones");
}

void SubclassRegistry::declare(std::string_view label) {
  std::string key = canonicalize_label(label, EntityKind::flavonoid_subclass);
  subclasses_.try_emplace(key, csv::trim(label));
}

void SubclassRegistry::add_synonym(std::string_view synonym,
                                   std::string_view canonical_key) {
  synonyms_[canonicalize_label(synonym, EntityKind::flavonoid_subclass)] =
      std::string(canonical_key);
}

std::optional<std::string> SubclassRegistry::resolve_key(std::string_view key) const {
  std::string k(key);
  if (subclasses_.contains(k)) return k;
  auto it = synonyms_.find(k);
  if (it != synonyms_.end() && subclasses_.contains(it->second)) return it->second;
  return std::nullopt;
}

// --- build_graph ----------------------------------------------------------

std::string composition_iri(std::string_view food_iri) {
  return std::string(food_iri) + "/composition";
}

std::string trial_iri(std::string_view trial_id, std::string_view ns) {
  std::string base(ns);
  base += "trial/";
  return mint_local_iri(csv::ascii_lower(csv::trim(trial_id)), base);
}

namespace {

class GraphBuilder {
 public:
  explicit GraphBuilder(const Schema& schema) : schema_(schema) {}

  void add_node(std::string iri, std::string_view kind, std::string label) {
    auto it = nodes_.find(iri);
    if (it != nodes_.end()) {
      if (it->second.kind != kind) {
        throw Error("IRI <" + iri + "> used for both " + it->second.kind + " and " +
                    std::string(kind));
      }
      return;
    }
    nodes_.emplace(iri, Node{iri, std::string(kind), std::move(label)});
  }

  const Node& node(const std::string& iri) const {
    auto it = nodes_.find(iri);
    if (it == nodes_.end()) throw Error("edge endpoint <" + iri + "> is not a node");
    return it->second;
  }

  // Duplicate (source, kind, target) triples keep the smallest property set,
  // so the outcome does not depend on insertion order.
  void add_edge(const std::string& source, std::string_view kind,
                const std::string& target, nlohmann::json props = nlohmann::json::object()) {
    const Node& s = node(source);
    const Node& t = node(target);
    if (!schema_.allows(s.kind, kind, t.kind)) {
      throw Error("schema violation: " + s.kind + " -" + std::string(kind) + "-> " +
                  t.kind + " (<" + source + "> to <" + target + ">)");
    }
    auto key = std::make_tuple(source, std::string(kind), target);
    auto [it, inserted] = edges_.try_emplace(key, Edge{source, std::string(kind), target, props});
    if (!inserted && props.dump() < it->second.props.dump()) it->second.props = std::move(props);
  }

  KnowledgeGraph finish() {
    std::vector<Node> nodes;
    nodes.reserve(nodes_.size());
    for (auto& [iri, node] : nodes_) nodes.push_back(std::move(node));
    std::vector<Edge> edges;
    edges.reserve(edges_.size());
    for (auto& [key, edge] : edges_) edges.push_back(std::move(edge));
    return KnowledgeGraph::from_parts(std::move(nodes), std::move(edges));
  }

 private:
  const Schema& schema_;
  std::map<std::string, Node> nodes_;
  std::map<std::tuple<std::string, std::string, std::string>, Edge> edges_;
};

}  // namespace

KnowledgeGraph build_graph(const BuildInputs& inputs, const BuildOptions& options) {
  GraphBuilder builder(options.schema);
  const std::string& ns = options.ns;

  // (kind, raw label) -> entity, and (kind, key) -> entity.
  std::map<std::pair<EntityKind, std::string>, const CanonicalEntity*> by_raw;
  std::map<std::pair<EntityKind, std::string>, const CanonicalEntity*> by_key;
  for (const auto& entity : inputs.entities) {
    by_key[{entity.kind, entity.canonical_key}] = &entity;
    for (const auto& [raw, source] : entity.merged_from) by_raw[{entity.kind, raw}] = &entity;
  }
  auto entity_for = [&](EntityKind kind, const std::string& raw,
                        const SourceProvenance& where) -> const CanonicalEntity& {
    auto it = by_raw.find({kind, raw});
    if (it == by_raw.end()) {
      throw ParseError(where.file_name, where.line_number,
                       std::string(to_string(kind)) + " label '" + raw +
                           "' does not resolve to a canonical entity");
    }
    return *it->second;
  };

  // Entity IRIs; two keys minting to the same IRI is an error.
  std::map<std::string, std::string> key_of_iri;
  auto entity_iri = [&](const CanonicalEntity& entity) {
    std::string iri = mint_local_iri(entity.canonical_key, ns);
    auto [it, inserted] = key_of_iri.try_emplace(iri, entity.canonical_key);
    if (!inserted && it->second != entity.canonical_key) {
      throw Error("keys '" + it->second + "' and '" + entity.canonical_key +
                  "' both mint <" + iri + ">");
    }
    return iri;
  };

  auto subclass_key = [&](const std::string& key, const SourceProvenance& where) {
    auto resolved = options.subclasses.resolve_key(key);
    if (!resolved) {
      throw ParseError(where.file_name, where.line_number,
                       "unknown flavonoid subclass '" + key +
                           "' (not seeded and not declared in config)");
    }
    return *resolved;
  };

  for (const auto& [key, label] : options.subclasses.subclasses()) {
    builder.add_node(mint_local_iri(key, ns), node_kind::kFlavonoidSubclass, label);
  }

  std::map<std::string, std::string> iri_of_entity;  // canonical key -> node IRI
  for (const auto& entity : inputs.entities) {
    if (entity.kind == EntityKind::flavonoid_subclass) {
      SourceProvenance where = entity.merged_from.empty() ? SourceProvenance{}
                                                           : entity.merged_from.front().second;
      iri_of_entity[entity.canonical_key] =
          mint_local_iri(subclass_key(entity.canonical_key, where), ns);
      continue;
    }
    std::string iri = entity_iri(entity);
    builder.add_node(iri, to_string(entity.kind), entity.display_label);
    iri_of_entity[entity.canonical_key] = iri;
  }
  auto iri_for = [&](const CanonicalEntity& entity) -> const std::string& {
    return iri_of_entity.at(entity.canonical_key);
  };

  // Foods: one group parent and one composition each.
  std::unordered_map<std::string, std::string> food_by_code;
  std::map<std::string, std::string> group_of_food;
  for (const auto& food : inputs.foods) {
    const auto& food_entity = entity_for(EntityKind::food, food.description, food.source);
    const auto& group_entity = entity_for(EntityKind::food_group, food.food_group, food.source);
    const std::string& food_iri = iri_for(food_entity);
    const std::string& group_iri = iri_for(group_entity);
    auto [it, inserted] = group_of_food.try_emplace(food_iri, group_iri);
    if (!inserted && it->second != group_iri) {
      throw ParseError(food.source.file_name, food.source.line_number,
                       "food '" + food_entity.display_label + "' is in groups <" +
                           it->second + "> and <" + group_iri + ">");
    }
    std::string comp = composition_iri(food_iri);
    builder.add_node(comp, node_kind::kComposition,
                     food_entity.display_label + " composition");
    builder.add_edge(group_iri, edge_kind::kParentOf, food_iri);
    builder.add_edge(food_iri, edge_kind::kHasComposition, comp);
    food_by_code[food.food_code] = food_iri;
  }

  std::map<std::string, std::string> subclass_of_flavonoid;
  for (const auto& content : inputs.contents) {
    auto food = food_by_code.find(content.food_code);
    if (food == food_by_code.end()) {
      throw ParseError(content.source.file_name, content.source.line_number,
                       "unknown food code '" + content.food_code + "'");
    }
    const auto& flavonoid = entity_for(EntityKind::flavonoid, content.flavonoid_name, content.source);
    const auto& subclass = entity_for(EntityKind::flavonoid_subclass, content.subclass, content.source);
    const std::string& flavonoid_iri = iri_for(flavonoid);
    std::string subclass_iri = mint_local_iri(subclass_key(subclass.canonical_key, content.source), ns);
    auto [it, inserted] = subclass_of_flavonoid.try_emplace(flavonoid_iri, subclass_iri);
    if (!inserted && it->second != subclass_iri) {
      throw ParseError(content.source.file_name, content.source.line_number,
                       "flavonoid '" + flavonoid.display_label + "' is in subclasses <" +
                           it->second + "> and <" + subclass_iri + ">");
    }
    builder.add_edge(subclass_iri, edge_kind::kParentOf, flavonoid_iri);
    nlohmann::json props = {{"mean_mg_per_100g", content.mean_mg_per_100g},
                            {"method", content.method},
                            {"state", content.state}};
    builder.add_edge(composition_iri(food->second), edge_kind::kHasComponent, flavonoid_iri,
                     std::move(props));
  }

  for (const auto& assoc : inputs.associations) {
    const auto& flavonoid = entity_for(EntityKind::flavonoid, assoc.flavonoid_name, assoc.source);
    const auto& disease = entity_for(EntityKind::disease, assoc.disease_label, assoc.source);
    nlohmann::json props = {{"effect", assoc.effect}, {"citation_key", assoc.citation_key}};
    builder.add_edge(iri_for(flavonoid), edge_kind::kHasAssociatedDisease, iri_for(disease),
                     std::move(props));
  }

  for (const auto& drug : inputs.drugs) {
    auto food = food_by_code.find(drug.composition_food_code);
    if (food == food_by_code.end()) {
      throw ParseError(drug.source.file_name, drug.source.line_number,
                       "unknown food code '" + drug.composition_food_code + "'");
    }
    const std::string& drug_iri = iri_for(entity_for(EntityKind::drug, drug.drug_name, drug.source));
    builder.add_edge(drug_iri, edge_kind::kFormulatedFrom, composition_iri(food->second));
    if (drug.trial_id.empty()) continue;
    std::string trial = trial_iri(drug.trial_id, ns);
    builder.add_node(trial, node_kind::kClinicalTrial, drug.trial_id);
    builder.add_edge(drug_iri, edge_kind::kEvaluatedIn, trial);
    if (!drug.disease_label.empty()) {
      const auto& disease = entity_for(EntityKind::disease, drug.disease_label, drug.source);
      builder.add_edge(trial, edge_kind::kTargets, iri_for(disease));
    }
  }

  for (const auto& mapping : inputs.mappings) {
    if (mapping.outcome == MatchOutcome::minted) continue;
    auto entity = by_key.find({mapping.kind, mapping.entity_key});
    if (entity == by_key.end()) continue;  // mapping for an entity not in this build
    std::string id_iri = expand_curie_or_obo(mapping.iri_or_curie, options.prefixes);
    builder.add_node(id_iri, node_kind::kIdentifier, mapping.iri_or_curie);
    builder.add_edge(iri_for(*entity->second), edge_kind::kHasId, id_iri);
  }

  KnowledgeGraph graph = builder.finish();
  auto cycles = cyclic_components(graph, edge_kind::kParentOf);
  if (!cycles.empty()) {
    throw Error("parent_of cycle through <" + cycles.front().front() + ">");
  }
  return graph;
}

// --- queries over the graph -----------------------------------------------

std::vector<const Node*> neighbors(const KnowledgeGraph& graph, std::string_view node_iri,
                                   std::string_view kind, Direction direction) {
  if (graph.find_node(node_iri) == nullptr) {
    throw Error("unknown node <" + std::string(node_iri) + ">");
  }
  std::vector<const Node*> out;
  for (const Edge* e : graph.incident(node_iri, kind, direction)) {
    const Node* other = graph.find_node(direction == Direction::out ? e->target : e->source);
    if (other != nullptr) out.push_back(other);
  }
  std::sort(out.begin(), out.end(), [](const Node* a, const Node* b) {
    return std::tie(a->label, a->iri) < std::tie(b->label, b->iri);
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<ContainsRow> derived_contains(const KnowledgeGraph& graph) {
  std::vector<ContainsRow> rows;
  for (const Edge& composition : graph.edges()) {
    if (composition.kind != edge_kind::kHasComposition) continue;
    for (const Edge* component :
         graph.incident(composition.target, edge_kind::kHasComponent, Direction::out)) {
      double mean = 0.0;
      if (auto it = component->props.find("mean_mg_per_100g");
          it != component->props.end() && it->is_number()) {
        mean = it->get<double>();
      }
      rows.push_back({composition.source, component->target, mean});
    }
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

std::set<std::pair<std::string, std::string>> transitive_closure(
    const KnowledgeGraph& graph, std::string_view kind) {
  std::map<std::string, std::vector<std::string>> adjacency;
  for (const Edge& e : graph.edges()) {
    if (e.kind == kind) adjacency[e.source].push_back(e.target);
  }
  std::set<std::pair<std::string, std::string>> closure;
  for (const auto& [start, direct] : adjacency) {
    std::unordered_set<std::string> seen;
    std::vector<const std::string*> stack;
    for (const auto& t : direct) stack.push_back(&t);
    while (!stack.empty()) {
      const std::string& current = *stack.back();
      stack.pop_back();
      if (!seen.insert(current).second) continue;
      if (current != start) closure.emplace(start, current);
      auto next = adjacency.find(current);
      if (next == adjacency.end()) continue;
      for (const auto& t : next->second) stack.push_back(&t);
    }
  }
  return closure;
}

std::vector<std::vector<std::string>> cyclic_components(const KnowledgeGraph& graph,
                                                        std::string_view kind) {
  // Iterative Tarjan over string vertices.
  std::map<std::string, std::vector<std::string>> adjacency;
  std::set<std::string> self_loops;
  for (const Edge& e : graph.edges()) {
    if (e.kind != kind) continue;
    adjacency[e.source].push_back(e.target);
    adjacency.try_emplace(e.target);
    if (e.source == e.target) self_loops.insert(e.source);
  }

  std::map<std::string, std::size_t> index, lowlink;
  std::set<std::string> on_stack;
  std::vector<std::string> stack;
  std::size_t counter = 0;
  std::vector<std::vector<std::string>> components;

  struct Frame {
    const std::string* vertex;
    std::size_t next_child;
  };
  for (const auto& [root, ignored] : adjacency) {
    if (index.contains(root)) continue;
    std::vector<Frame> call{{&root, 0}};
    index[root] = lowlink[root] = counter++;
    stack.push_back(root);
    on_stack.insert(root);
    while (!call.empty()) {
      Frame& frame = call.back();
      const std::string& v = *frame.vertex;
      const auto& children = adjacency[v];
      if (frame.next_child < children.size()) {
        const std::string& w = children[frame.next_child++];
        if (!index.contains(w)) {
          index[w] = lowlink[w] = counter++;
          stack.push_back(w);
          on_stack.insert(w);
          call.push_back({&adjacency.find(w)->first, 0});
        } else if (on_stack.contains(w)) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
        continue;
      }
      if (lowlink[v] == index[v]) {
        std::vector<std::string> component;
        while (true) {
          std::string w = stack.back();
          stack.pop_back();
          on_stack.erase(w);
          component.push_back(w);
          if (w == v) break;
        }
        if (component.size() > 1 || self_loops.contains(v)) {
          std::sort(component.begin(), component.end());
          components.push_back(std::move(component));
        }
      }
      std::string finished = v;
      call.pop_back();
      if (!call.empty()) {
        const std::string& parent = *call.back().vertex;
        lowlink[parent] = std::min(lowlink[parent], lowlink[finished]);
      }
    }
  }
  std::sort(components.begin(), components.end());
  return components;
}

// --- CSV export / import --------------------------------------------------

GraphCsv export_graph_csv(const KnowledgeGraph& graph) {
  GraphCsv out;
  csv::append_row(out.nodes, {"iri", "kind", "label"});
  for (const auto& node : graph.nodes()) {
    csv::append_row(out.nodes, {node.iri, node.kind, node.label});
  }
  csv::append_row(out.edges, {"source", "kind", "target", "props_json"});
  for (const auto& edge : graph.edges()) {
    csv::append_row(out.edges, {edge.source, edge.kind, edge.target, edge.props.dump()});
  }
  return out;
}

KnowledgeGraph import_graph_csv(std::string_view nodes_csv, std::string_view edges_csv) {
  auto expect_header = [](const std::vector<csv::Row>& rows, std::string_view file,
                          const std::vector<std::string>& header) {
    if (rows.empty()) throw ParseError(std::string(file), 1, "missing header row");
    std::vector<std::string> got;
    for (const auto& cell : rows.front().cells) got.push_back(csv::ascii_lower(csv::trim(cell)));
    if (got != header) throw ParseError(std::string(file), rows.front().line, "unexpected header");
  };

  auto node_rows = csv::parse(nodes_csv, "graph_nodes.csv");
  expect_header(node_rows, "graph_nodes.csv", {"iri", "kind", "label"});
  std::vector<Node> nodes;
  for (std::size_t i = 1; i < node_rows.size(); ++i) {
    const auto& row = node_rows[i];
    if (row.cells.size() != 3) throw ParseError("graph_nodes.csv", row.line, "expected 3 columns");
    nodes.push_back({row.cells[0], row.cells[1], row.cells[2]});
  }

  auto edge_rows = csv::parse(edges_csv, "graph_edges.csv");
  expect_header(edge_rows, "graph_edges.csv", {"source", "kind", "target", "props_json"});
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < edge_rows.size(); ++i) {
    const auto& row = edge_rows[i];
    if (row.cells.size() != 4) throw ParseError("graph_edges.csv", row.line, "expected 4 columns");
    nlohmann::json props = nlohmann::json::object();
    if (!row.cells[3].empty()) {
      try {
        props = nlohmann::json::parse(row.cells[3]);
      } catch (const nlohmann::json::exception& e) {
        throw ParseError("graph_edges.csv", row.line, std::string("bad props_json: ") + e.what());
      }
      if (!props.is_object()) throw ParseError("graph_edges.csv", row.line, "props_json must be an object");
    }
    edges.push_back({row.cells[0], row.cells[1], row.cells[2], std::move(props)});
  }
  return KnowledgeGraph::from_parts(std::move(nodes), std::move(edges));
}

std::uint64_t graph_fingerprint(const KnowledgeGraph& graph) {
  GraphCsv text = export_graph_csv(graph);
  std::uint64_t hash = 1469598103934665603ULL;
  for (const std::string* part : {&text.nodes, &text.edges}) {
    for (unsigned char c : *part) {
      hash ^= c;
      hash *= 1099511628211ULL;
    }
    hash ^= 0xff;
    hash *= 1099511628211ULL;
  }
  return hash;
}

}  // namespace flavokg
