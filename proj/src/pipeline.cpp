#include "flavokg/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <ostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "flavokg/error.hpp"
#include "flavokg/templater.hpp"
#include "flavokg/turtle.hpp"

namespace flavokg {

using nlohmann::json;

// --- config ---------------------------------------------------------------

namespace {

const std::set<std::string> kConfigKeys = {
    "inputs",          "column_renames",     "vocabularies",      "vocabulary_order",
    "namespace",       "namespace_prefix",   "prefixes",          "curation_overrides",
    "plural_exceptions", "extra_subclasses", "schema_extension",  "output_dir",
    "near_duplicate_distance"};

const std::set<std::string> kTables = {"foods", "contents", "associations", "drugs"};

std::string expect_string(const json& value, const std::string& key) {
  if (!value.is_string()) throw ConfigError("config key '" + key + "' must be a string");
  return value.get<std::string>();
}

fs::path resolve(const fs::path& base, const std::string& path) {
  fs::path p(path);
  return p.is_absolute() ? p : base / p;
}

}  // namespace

PipelineConfig parse_config(std::string_view json_text, const fs::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : root.items()) {
    if (!kConfigKeys.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  }

  PipelineConfig config;
  auto optional_path = [&](const char* key) -> std::optional<fs::path> {
    if (!root.contains(key) || root[key].is_null()) return std::nullopt;
    return resolve(base_dir, expect_string(root[key], key));
  };

  if (!root.contains("inputs") || !root["inputs"].is_object()) {
    throw ConfigError("config needs an 'inputs' object");
  }
  const json& inputs = root["inputs"];
  for (const auto& [key, value] : inputs.items()) {
    if (!kTables.contains(key)) throw ConfigError("unknown input table '" + key + "'");
  }
  for (const char* table : {"foods", "contents", "associations"}) {
    if (!inputs.contains(table)) throw ConfigError(std::string("inputs.") + table + " is required");
  }
  config.foods = resolve(base_dir, expect_string(inputs["foods"], "inputs.foods"));
  config.contents = resolve(base_dir, expect_string(inputs["contents"], "inputs.contents"));
  config.associations =
      resolve(base_dir, expect_string(inputs["associations"], "inputs.associations"));
  if (inputs.contains("drugs") && !inputs["drugs"].is_null()) {
    config.drugs = resolve(base_dir, expect_string(inputs["drugs"], "inputs.drugs"));
  }

  if (root.contains("column_renames")) {
    const json& renames = root["column_renames"];
    if (!renames.is_object()) throw ConfigError("column_renames must be an object");
    for (const auto& [table, map] : renames.items()) {
      if (!kTables.contains(table)) throw ConfigError("unknown table '" + table + "' in column_renames");
      if (!map.is_object()) throw ConfigError("column_renames." + table + " must be an object");
      for (const auto& [from, to] : map.items()) {
        config.column_renames[table][from] = expect_string(to, "column_renames." + table + "." + from);
      }
    }
  }

  if (root.contains("vocabularies")) {
    const json& vocabs = root["vocabularies"];
    if (!vocabs.is_array()) throw ConfigError("vocabularies must be an array");
    for (const auto& v : vocabs) {
      if (!v.is_object() || !v.contains("name") || !v.contains("path")) {
        throw ConfigError("each vocabulary needs 'name' and 'path'");
      }
      config.vocabularies.push_back({expect_string(v["name"], "vocabularies.name"),
                                     resolve(base_dir, expect_string(v["path"], "vocabularies.path"))});
    }
  }

  if (root.contains("vocabulary_order")) {
    const json& order = root["vocabulary_order"];
    if (!order.is_object()) throw ConfigError("vocabulary_order must be an object");
    for (const auto& [kind_name, names] : order.items()) {
      auto kind = parse_entity_kind(kind_name);
      if (!kind) throw ConfigError("unknown entity kind '" + kind_name + "' in vocabulary_order");
      if (!names.is_array()) throw ConfigError("vocabulary_order." + kind_name + " must be an array");
      auto& list = config.vocabulary_order[*kind];
      for (const auto& n : names) list.push_back(expect_string(n, "vocabulary_order." + kind_name));
    }
  }

  if (root.contains("namespace")) config.ns = expect_string(root["namespace"], "namespace");
  if (root.contains("namespace_prefix")) {
    config.namespace_prefix = expect_string(root["namespace_prefix"], "namespace_prefix");
  }
  config.prefixes = optional_path("prefixes");
  config.curation_overrides = optional_path("curation_overrides");
  config.plural_exceptions = optional_path("plural_exceptions");
  config.schema_extension = optional_path("schema_extension");
  if (root.contains("extra_subclasses")) {
    const json& extra = root["extra_subclasses"];
    if (!extra.is_array()) throw ConfigError("extra_subclasses must be an array");
    for (const auto& e : extra) config.extra_subclasses.push_back(expect_string(e, "extra_subclasses"));
  }
  if (root.contains("output_dir")) {
    config.output_dir = resolve(base_dir, expect_string(root["output_dir"], "output_dir"));
  } else {
    config.output_dir = base_dir / "out";
  }
  if (root.contains("near_duplicate_distance")) {
    const json& d = root["near_duplicate_distance"];
    if (!d.is_number_unsigned()) throw ConfigError("near_duplicate_distance must be a non-negative integer");
    config.near_duplicate_distance = d.get<std::size_t>();
  }
  return config;
}

PipelineConfig load_config(const fs::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  fs::path base = path.parent_path();
  if (base.empty()) base = ".";
  return parse_config(text, base);
}

void check_config(const PipelineConfig& config) {
  if (config.ns.empty() || (config.ns.back() != '/' && config.ns.back() != '#')) {
    throw ConfigError("namespace '" + config.ns + "' must end with '/' or '#'");
  }
  auto require = [](const fs::path& p, const std::string& what) {
    if (!fs::is_regular_file(p)) throw ConfigError(what + " not found: " + p.string());
  };
  require(config.foods, "foods table");
  require(config.contents, "contents table");
  require(config.associations, "associations table");
  if (config.drugs) require(*config.drugs, "drugs table");
  if (config.prefixes) require(*config.prefixes, "prefixes file");
  if (config.curation_overrides) require(*config.curation_overrides, "curation overrides");
  if (config.plural_exceptions) require(*config.plural_exceptions, "plural exceptions");
  if (config.schema_extension) require(*config.schema_extension, "schema extension");
  std::set<std::string> names;
  for (const auto& v : config.vocabularies) {
    if (!names.insert(v.name).second) throw ConfigError("duplicate vocabulary name '" + v.name + "'");
    require(v.path, "vocabulary '" + v.name + "'");
  }
  for (const auto& [kind, order] : config.vocabulary_order) {
    for (const auto& n : order) {
      if (!names.contains(n)) {
        throw ConfigError("vocabulary_order." + std::string(to_string(kind)) +
                          " names unknown vocabulary '" + n + "'");
      }
    }
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, std::string_view contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error("short write to " + path.string());
}

Normalizer make_normalizer(const PipelineConfig& config) {
  Normalizer normalizer;
  if (config.plural_exceptions) normalizer.load_plural_exceptions(read_file(*config.plural_exceptions));
  if (config.curation_overrides) {
    normalizer.load_overrides(read_file(*config.curation_overrides),
                              config.curation_overrides->filename().string());
  }
  return normalizer;
}

Schema make_schema(const PipelineConfig& config) {
  Schema schema = Schema::standard();
  if (config.schema_extension) {
    schema.extend(read_file(*config.schema_extension),
                  config.schema_extension->filename().string());
  }
  return schema;
}

SubclassRegistry make_subclasses(const PipelineConfig& config) {
  SubclassRegistry registry;
  for (const auto& label : config.extra_subclasses) registry.declare(label);
  return registry;
}

PrefixMap make_prefixes(const PipelineConfig& config) {
  PrefixMap prefixes;
  if (config.prefixes) {
    prefixes = PrefixMap::load(read_file(*config.prefixes), config.prefixes->filename().string());
  }
  prefixes.add(config.namespace_prefix, config.ns);
  prefixes.add_missing(PrefixMap::standard());
  return prefixes;
}

// --- ingested tables ------------------------------------------------------

namespace {

const ColumnRenames& renames_for(const PipelineConfig& config, const std::string& table) {
  static const ColumnRenames kNone;
  auto it = config.column_renames.find(table);
  return it == config.column_renames.end() ? kNone : it->second;
}

json provenance_json(const SourceProvenance& p) {
  return {{"file", p.file_name}, {"line", p.line_number}};
}

SourceProvenance provenance_from(const json& j) {
  return {j.at("file").get<std::string>(), j.at("line").get<std::size_t>()};
}

}  // namespace

IngestedTables ingest_tables(const PipelineConfig& config) {
  IngestedTables tables;
  tables.foods = parse_food_table(read_file(config.foods), config.foods.filename().string(),
                                  renames_for(config, "foods"));
  tables.contents = parse_flavonoid_table(read_file(config.contents),
                                          config.contents.filename().string(),
                                          renames_for(config, "contents"));
  tables.associations = parse_disease_associations(read_file(config.associations),
                                                   config.associations.filename().string(),
                                                   renames_for(config, "associations"));
  if (config.drugs) {
    tables.drugs = parse_drug_table(read_file(*config.drugs), config.drugs->filename().string(),
                                    renames_for(config, "drugs"));
  }
  return tables;
}

std::string ingested_to_json(const IngestedTables& tables) {
  json root = json::object();
  json& foods = root["foods"] = json::array();
  for (const auto& r : tables.foods) {
    foods.push_back({{"food_code", r.food_code},
                     {"description", r.description},
                     {"food_group", r.food_group},
                     {"source", provenance_json(r.source)}});
  }
  json& contents = root["contents"] = json::array();
  for (const auto& r : tables.contents) {
    contents.push_back({{"food_code", r.food_code},
                        {"flavonoid_name", r.flavonoid_name},
                        {"subclass", r.subclass},
                        {"mean_mg_per_100g", r.mean_mg_per_100g},
                        {"method", r.method},
                        {"state", r.state},
                        {"source", provenance_json(r.source)}});
  }
  json& assocs = root["associations"] = json::array();
  for (const auto& r : tables.associations) {
    assocs.push_back({{"flavonoid_name", r.flavonoid_name},
                      {"disease_label", r.disease_label},
                      {"disease_id", r.external_disease_id ? json(*r.external_disease_id) : json()},
                      {"effect", r.effect},
                      {"citation_key", r.citation_key},
                      {"source", provenance_json(r.source)}});
  }
  json& drugs = root["drugs"] = json::array();
  for (const auto& r : tables.drugs) {
    drugs.push_back({{"drug_name", r.drug_name},
                     {"composition_food_code", r.composition_food_code},
                     {"trial_id", r.trial_id},
                     {"disease_label", r.disease_label},
                     {"source", provenance_json(r.source)}});
  }
  return root.dump(1) + "\n";
}

IngestedTables ingested_from_json(std::string_view text) {
  IngestedTables tables;
  try {
    json root = json::parse(text);
    for (const auto& j : root.at("foods")) {
      tables.foods.push_back({j.at("food_code"), j.at("description"), j.at("food_group"),
                              provenance_from(j.at("source"))});
    }
    for (const auto& j : root.at("contents")) {
      tables.contents.push_back({j.at("food_code"), j.at("flavonoid_name"), j.at("subclass"),
                                 j.at("mean_mg_per_100g").get<double>(), j.at("method"),
                                 j.at("state"), provenance_from(j.at("source"))});
    }
    for (const auto& j : root.at("associations")) {
      AssociationRecord r;
      r.flavonoid_name = j.at("flavonoid_name");
      r.disease_label = j.at("disease_label");
      if (!j.at("disease_id").is_null()) r.external_disease_id = j.at("disease_id").get<std::string>();
      r.effect = j.at("effect");
      r.citation_key = j.at("citation_key");
      r.source = provenance_from(j.at("source"));
      tables.associations.push_back(std::move(r));
    }
    for (const auto& j : root.at("drugs")) {
      tables.drugs.push_back({j.at("drug_name"), j.at("composition_food_code"), j.at("trial_id"),
                              j.at("disease_label"), provenance_from(j.at("source"))});
    }
  } catch (const json::exception& e) {
    throw Error(std::string(artifact::kIngested) + ": " + e.what());
  }
  return tables;
}

std::vector<LabelOccurrence> collect_occurrences(const IngestedTables& tables,
                                                 const SubclassRegistry& subclasses) {
  std::vector<LabelOccurrence> occ;
  for (const auto& r : tables.foods) {
    occ.push_back({r.description, EntityKind::food, r.source});
    occ.push_back({r.food_group, EntityKind::food_group, r.source});
  }
  for (const auto& r : tables.contents) {
    occ.push_back({r.flavonoid_name, EntityKind::flavonoid, r.source});
    occ.push_back({r.subclass, EntityKind::flavonoid_subclass, r.source});
  }
  for (const auto& r : tables.associations) {
    occ.push_back({r.flavonoid_name, EntityKind::flavonoid, r.source});
    occ.push_back({r.disease_label, EntityKind::disease, r.source});
  }
  for (const auto& r : tables.drugs) {
    occ.push_back({r.drug_name, EntityKind::drug, r.source});
    if (!r.disease_label.empty()) occ.push_back({r.disease_label, EntityKind::disease, r.source});
  }
  std::size_t line = 0;
  for (const auto& [key, label] : subclasses.subclasses()) {
    occ.push_back({label, EntityKind::flavonoid_subclass, {"subclasses", ++line}});
  }
  return occ;
}

std::string entities_to_json(const std::vector<CanonicalEntity>& entities) {
  json out = json::array();
  for (const auto& e : entities) {
    json merged = json::array();
    for (const auto& [raw, source] : e.merged_from) {
      merged.push_back({{"raw", raw}, {"file", source.file_name}, {"line", source.line_number}});
    }
    out.push_back({{"canonical_key", e.canonical_key},
                   {"display_label", e.display_label},
                   {"kind", to_string(e.kind)},
                   {"merged_from", std::move(merged)}});
  }
  return out.dump(1) + "\n";
}

std::vector<CanonicalEntity> entities_from_json(std::string_view text) {
  std::vector<CanonicalEntity> entities;
  try {
    for (const auto& j : json::parse(text)) {
      CanonicalEntity e;
      e.canonical_key = j.at("canonical_key");
      e.display_label = j.at("display_label");
      auto kind = parse_entity_kind(j.at("kind").get<std::string>());
      if (!kind) throw Error("unknown entity kind in " + std::string(artifact::kEntities));
      e.kind = *kind;
      for (const auto& m : j.at("merged_from")) {
        e.merged_from.emplace_back(m.at("raw").get<std::string>(), provenance_from(m));
      }
      entities.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    throw Error(std::string(artifact::kEntities) + ": " + e.what());
  }
  return entities;
}

// --- mapping --------------------------------------------------------------

std::vector<MappingResult> map_entities(const std::vector<CanonicalEntity>& entities,
                                        const IngestedTables& tables,
                                        const std::vector<Vocabulary>& vocabularies,
                                        const PipelineConfig& config,
                                        const Normalizer& normalizer) {
  std::vector<VocabularyIndex> indexes;
  indexes.reserve(vocabularies.size());
  for (const auto& v : vocabularies) indexes.emplace_back(v, normalizer);

  auto order_for = [&](EntityKind kind) {
    std::vector<const VocabularyIndex*> order;
    auto it = config.vocabulary_order.find(kind);
    if (it == config.vocabulary_order.end()) {
      for (const auto& index : indexes) order.push_back(&index);
      return order;
    }
    for (const auto& name : it->second) {
      for (const auto& index : indexes) {
        if (index.name() == name) order.push_back(&index);
      }
    }
    return order;
  };

  // Curated disease IDs from the association table.
  std::map<std::string, std::pair<std::string, SourceProvenance>> curated;
  for (const auto& a : tables.associations) {
    if (!a.external_disease_id) continue;
    std::string key = normalizer.key_for(a.disease_label, EntityKind::disease);
    auto [it, inserted] = curated.try_emplace(key, *a.external_disease_id, a.source);
    if (!inserted && it->second.first != *a.external_disease_id) {
      throw ParseError(a.source.file_name, a.source.line_number,
                       "disease '" + a.disease_label + "' has ids " + it->second.first +
                           " (line " + std::to_string(it->second.second.line_number) +
                           ") and " + *a.external_disease_id);
    }
  }

  std::vector<MappingResult> results;
  results.reserve(entities.size());
  for (const auto& entity : entities) {
    auto order = order_for(entity.kind);
    if (entity.kind == EntityKind::disease) {
      if (auto it = curated.find(entity.canonical_key); it != curated.end()) {
        const auto& [curie, where] = it->second;
        const VocabularyIndex* home = nullptr;
        for (const auto* index : order) {
          if (index->contains(curie)) {
            home = index;
            break;
          }
        }
        if (!home) {
          throw ParseError(where.file_name, where.line_number,
                           "DiseaseId " + curie + " is not in any disease vocabulary");
        }
        results.push_back({entity.canonical_key, entity.kind, MatchOutcome::exact_label, curie,
                           home->name()});
        continue;
      }
    }
    results.push_back(map_term(entity, order, config.ns));
  }
  return results;
}

// --- stages ---------------------------------------------------------------

namespace {

fs::path out_path(const PipelineConfig& config, std::string_view name) {
  return config.output_dir / fs::path(std::string(name));
}

std::vector<Vocabulary> load_vocabularies(const PipelineConfig& config) {
  std::vector<Vocabulary> vocabularies;
  for (const auto& source : config.vocabularies) {
    vocabularies.push_back(load_vocabulary(read_file(source.path), source.name));
  }
  return vocabularies;
}

}  // namespace

KnowledgeGraph load_graph(const fs::path& nodes_csv, const fs::path& edges_csv) {
  return import_graph_csv(read_file(nodes_csv), read_file(edges_csv));
}

void stage_ingest(const PipelineConfig& config, std::ostream& log) {
  IngestedTables tables = ingest_tables(config);
  write_file(out_path(config, artifact::kIngested), ingested_to_json(tables));
  log << "ingest: " << tables.foods.size() << " foods, " << tables.contents.size()
      << " content rows, " << tables.associations.size() << " associations, "
      << tables.drugs.size() << " drugs\n";
}

void stage_normalize(const PipelineConfig& config, std::ostream& log) {
  IngestedTables tables = ingested_from_json(read_file(out_path(config, artifact::kIngested)));
  Normalizer normalizer = make_normalizer(config);
  auto occurrences = collect_occurrences(tables, make_subclasses(config));
  MergeResult merged = merge_entities(occurrences, normalizer, config.near_duplicate_distance);
  write_file(out_path(config, artifact::kEntities), entities_to_json(merged.entities));
  write_file(out_path(config, artifact::kMergeReport), write_merge_report(merged.report));
  log << "normalize: " << occurrences.size() << " labels -> " << merged.entities.size()
      << " entities, " << merged.report.merges.size() << " merges, "
      << merged.report.review_queue.size() << " review pairs\n";
}

void stage_map(const PipelineConfig& config, std::ostream& log) {
  IngestedTables tables = ingested_from_json(read_file(out_path(config, artifact::kIngested)));
  auto entities = entities_from_json(read_file(out_path(config, artifact::kEntities)));
  auto vocabularies = load_vocabularies(config);
  auto results = map_entities(entities, tables, vocabularies, config, make_normalizer(config));
  MappingReport report = mapping_report(results);
  write_file(out_path(config, artifact::kMappings), write_mappings(results));
  write_file(out_path(config, artifact::kMappingReport), write_mapping_report(report));
  log << "map: " << results.size() << " entities, mapped fraction "
      << format_decimal(report.mapped_fraction) << "\n";
}

void stage_graph_build(const PipelineConfig& config, std::ostream& log) {
  IngestedTables tables = ingested_from_json(read_file(out_path(config, artifact::kIngested)));
  auto entities = entities_from_json(read_file(out_path(config, artifact::kEntities)));
  auto mappings = read_mappings(read_file(out_path(config, artifact::kMappings)),
                                artifact::kMappings);
  BuildInputs inputs{entities, mappings, tables.foods, tables.contents, tables.associations,
                     tables.drugs};
  BuildOptions options;
  options.ns = config.ns;
  options.schema = make_schema(config);
  options.subclasses = make_subclasses(config);
  options.prefixes = make_prefixes(config);
  KnowledgeGraph graph = build_graph(inputs, options);
  GraphCsv csv = export_graph_csv(graph);
  write_file(out_path(config, artifact::kNodes), csv.nodes);
  write_file(out_path(config, artifact::kEdges), csv.edges);
  log << "graph build: " << graph.nodes().size() << " nodes, " << graph.edges().size()
      << " edges\n";
}

void stage_graph_export(const PipelineConfig& config, std::ostream& log) {
  KnowledgeGraph graph =
      load_graph(out_path(config, artifact::kNodes), out_path(config, artifact::kEdges));
  GraphCsv csv = export_graph_csv(graph);
  write_file(out_path(config, artifact::kNodes), csv.nodes);
  write_file(out_path(config, artifact::kEdges), csv.edges);
  log << "graph export: " << graph.nodes().size() << " nodes, " << graph.edges().size()
      << " edges, fingerprint " << std::hex << graph_fingerprint(graph) << std::dec << "\n";
}

void stage_template_emit(const PipelineConfig& config, std::ostream& log) {
  KnowledgeGraph graph =
      load_graph(out_path(config, artifact::kNodes), out_path(config, artifact::kEdges));
  PrefixMap prefixes = make_prefixes(config);
  LayeredTemplates layers = graph_to_templates(graph, prefixes, config.ns);
  fs::path dir = out_path(config, artifact::kTemplates);
  fs::remove_all(dir);
  std::size_t sheets = 0;
  auto emit = [&](const std::vector<TemplateSheet>& layer, const char* name) {
    for (const auto& sheet : layer) {
      write_file(dir / name / (sheet.name + ".csv"), write_template(sheet));
      ++sheets;
    }
  };
  emit(layers.layer1, "layer1");
  emit(layers.layer2, "layer2");
  emit(layers.layer3, "layer3");
  write_file(out_path(config, artifact::kPrefixes), prefixes.write());
  log << "template emit: " << sheets << " sheets in 3 layers\n";
}

void stage_owl_build(const PipelineConfig& config, std::ostream& log) {
  fs::path prefix_file = out_path(config, artifact::kPrefixes);
  PrefixMap prefixes = PrefixMap::load(read_file(prefix_file), artifact::kPrefixes);
  fs::path dir = out_path(config, artifact::kTemplates);
  LayeredTemplates layers;
  auto load_layer = [&](const char* name, std::vector<TemplateSheet>& out) {
    fs::path layer_dir = dir / name;
    if (!fs::is_directory(layer_dir)) throw Error("missing template layer " + layer_dir.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(layer_dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      out.push_back(parse_template(read_file(f), f.stem().string()));
    }
  };
  load_layer("layer1", layers.layer1);
  load_layer("layer2", layers.layer2);
  load_layer("layer3", layers.layer3);
  OwlDocument doc = build_ontology(layers, prefixes);
  write_file(out_path(config, artifact::kOntology), serialize_turtle(doc, prefixes));
  log << "owl build: " << doc.size() << " axioms\n";
}

std::vector<Finding> stage_validate(const PipelineConfig& config, const ValidateInputs& inputs,
                                    std::ostream& log) {
  fs::path nodes = inputs.nodes.value_or(out_path(config, artifact::kNodes));
  fs::path edges = inputs.edges.value_or(out_path(config, artifact::kEdges));
  KnowledgeGraph graph = load_graph(nodes, edges);
  GraphCheckOptions options;
  options.subclasses = make_subclasses(config);
  std::vector<Finding> findings = check_graph(graph, options);

  std::optional<fs::path> ontology = inputs.ontology;
  if (!ontology && fs::exists(out_path(config, artifact::kOntology))) {
    ontology = out_path(config, artifact::kOntology);
  }
  if (ontology) {
    ParsedTurtle parsed = parse_turtle(read_file(*ontology), ontology->filename().string());
    auto more = check_ontology(parsed.document);
    findings.insert(findings.end(), more.begin(), more.end());
    sort_findings(findings);
  }

  std::vector<MappingResult> mappings;
  if (fs::path m = out_path(config, artifact::kMappings); fs::exists(m)) {
    mappings = read_mappings(read_file(m), artifact::kMappings);
  }
  write_file(out_path(config, artifact::kFindings), write_findings(findings));
  write_file(out_path(config, artifact::kCoverage), write_coverage(coverage_stats(graph, mappings)));
  std::size_t errors = std::count_if(findings.begin(), findings.end(),
                                     [](const Finding& f) { return f.severity == Severity::error; });
  log << "validate: " << errors << " errors, " << findings.size() - errors << " warnings\n";
  return findings;
}

std::vector<Finding> run_pipeline(const PipelineConfig& config, std::ostream& log) {
  stage_ingest(config, log);
  stage_normalize(config, log);
  stage_map(config, log);
  stage_graph_build(config, log);
  stage_template_emit(config, log);
  stage_owl_build(config, log);
  return stage_validate(config, {}, log);
}

}  // namespace flavokg
