#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flavokg/graph.hpp"
#include "flavokg/ingest.hpp"
#include "flavokg/normalize.hpp"
#include "flavokg/prefixes.hpp"
#include "flavokg/recycle.hpp"
#include "flavokg/validate.hpp"

namespace flavokg {

namespace fs = std::filesystem;

struct VocabularySource {
  std::string name;
  fs::path path;
};

// One JSON manifest per build. Relative paths resolve against the directory
// holding the config file.
struct PipelineConfig {
  fs::path foods;
  fs::path contents;
  fs::path associations;
  std::optional<fs::path> drugs;
  // table ("foods", "contents", "associations", "drugs") -> renames
  std::map<std::string, ColumnRenames> column_renames;
  std::vector<VocabularySource> vocabularies;
  // Kinds without an entry search every vocabulary in listed order.
  std::map<EntityKind, std::vector<std::string>> vocabulary_order;
  std::string ns = "http://example.org/flavokg/";
  std::string namespace_prefix = "ff";
  std::optional<fs::path> prefixes;
  std::optional<fs::path> curation_overrides;
  std::optional<fs::path> plural_exceptions;
  std::optional<fs::path> schema_extension;
  std::vector<std::string> extra_subclasses;
  fs::path output_dir = "out";
  std::size_t near_duplicate_distance = 2;
};

// Throws ConfigError for malformed JSON, unknown keys or wrong value types.
PipelineConfig parse_config(std::string_view json_text, const fs::path& base_dir);
PipelineConfig load_config(const fs::path& path);

// Input files exist, vocabulary names are unique and referenced names are
// known, the namespace ends with '/' or '#'. Throws ConfigError.
void check_config(const PipelineConfig& config);

std::string read_file(const fs::path& path);
void write_file(const fs::path& path, std::string_view contents);

// Curation inputs, schema, subclass registry and prefixes derived from the
// config.
Normalizer make_normalizer(const PipelineConfig& config);
Schema make_schema(const PipelineConfig& config);
SubclassRegistry make_subclasses(const PipelineConfig& config);
PrefixMap make_prefixes(const PipelineConfig& config);

struct IngestedTables {
  std::vector<FoodRecord> foods;
  std::vector<ContentRecord> contents;
  std::vector<AssociationRecord> associations;
  std::vector<DrugRecord> drugs;
};

IngestedTables ingest_tables(const PipelineConfig& config);
std::string ingested_to_json(const IngestedTables& tables);
IngestedTables ingested_from_json(std::string_view text);

// Every label occurrence in the tables, plus one per known subclass so that
// subclasses can be mapped like any other entity.
std::vector<LabelOccurrence> collect_occurrences(const IngestedTables& tables,
                                                 const SubclassRegistry& subclasses);

std::string entities_to_json(const std::vector<CanonicalEntity>& entities);
std::vector<CanonicalEntity> entities_from_json(std::string_view text);

// Mapping with the configured vocabulary order. A DiseaseId given in the
// association table is taken as curated: it must occur in one of the disease
// vocabularies and is reported as an exact_label match.
std::vector<MappingResult> map_entities(const std::vector<CanonicalEntity>& entities,
                                        const IngestedTables& tables,
                                        const std::vector<Vocabulary>& vocabularies,
                                        const PipelineConfig& config,
                                        const Normalizer& normalizer);

// Artifact names inside the output directory.
namespace artifact {
inline constexpr std::string_view kIngested = "ingested.json";
inline constexpr std::string_view kEntities = "entities.json";
inline constexpr std::string_view kMergeReport = "merge_report.tsv";
inline constexpr std::string_view kMappings = "mappings.tsv";
inline constexpr std::string_view kMappingReport = "mapping_report.tsv";
inline constexpr std::string_view kNodes = "graph_nodes.csv";
inline constexpr std::string_view kEdges = "graph_edges.csv";
inline constexpr std::string_view kTemplates = "templates";
inline constexpr std::string_view kPrefixes = "prefixes.tsv";
inline constexpr std::string_view kOntology = "ontology.ttl";
inline constexpr std::string_view kFindings = "findings.tsv";
inline constexpr std::string_view kCoverage = "coverage.tsv";
}  // namespace artifact

// Stages read the artifacts of earlier stages from the output directory and
// log one summary line each.
void stage_ingest(const PipelineConfig& config, std::ostream& log);
void stage_normalize(const PipelineConfig& config, std::ostream& log);
void stage_map(const PipelineConfig& config, std::ostream& log);
void stage_graph_build(const PipelineConfig& config, std::ostream& log);
void stage_graph_export(const PipelineConfig& config, std::ostream& log);
void stage_template_emit(const PipelineConfig& config, std::ostream& log);
void stage_owl_build(const PipelineConfig& config, std::ostream& log);

struct ValidateInputs {
  std::optional<fs::path> nodes;     // default: output dir graph_nodes.csv
  std::optional<fs::path> edges;     // default: output dir graph_edges.csv
  std::optional<fs::path> ontology;  // default: output dir ontology.ttl if present
};

std::vector<Finding> stage_validate(const PipelineConfig& config, const ValidateInputs& inputs,
                                    std::ostream& log);

// All stages in order; returns the validation findings.
std::vector<Finding> run_pipeline(const PipelineConfig& config, std::ostream& log);

KnowledgeGraph load_graph(const fs::path& nodes_csv, const fs::path& edges_csv);

}  // namespace flavokg
