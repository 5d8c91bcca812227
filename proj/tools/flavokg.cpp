// flavokg: staged food/flavonoid/disease knowledge-graph builder.
//
//   flavokg -c config.json pipeline run
//   flavokg -c config.json query -e 'FOODS IN GROUP "Dairy and Egg Products"'
//   flavokg --output-dir out validate --ontology edited.ttl

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "flavokg/csv.hpp"
#include "flavokg/error.hpp"
#include "flavokg/pipeline.hpp"
#include "flavokg/query.hpp"

namespace {

constexpr const char* kVersion = "0.3.0";
constexpr const char* kConfigEnv = "FLAVOKG_CONFIG";

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct GlobalOptions {
  std::string config;
  std::string output_dir;
  std::string ns;
};

// Loads the config named by -c or $FLAVOKG_CONFIG, then applies flag
// overrides. With `need_inputs` false a missing config falls back to defaults.
flavokg::PipelineConfig resolve_config(const GlobalOptions& opts, bool need_inputs) {
  std::string path = opts.config;
  if (path.empty()) {
    if (const char* env = std::getenv(kConfigEnv)) path = env;
  }
  flavokg::PipelineConfig config;
  bool loaded = false;
  if (!path.empty()) {
    config = flavokg::load_config(path);
    loaded = true;
  } else if (need_inputs) {
    throw flavokg::ConfigError(std::string("no config file: pass -c or set ") + kConfigEnv);
  }
  if (!opts.output_dir.empty()) config.output_dir = opts.output_dir;
  if (!opts.ns.empty()) config.ns = opts.ns;
  if (loaded) {
    flavokg::check_config(config);
  } else if (config.ns.empty() || (config.ns.back() != '/' && config.ns.back() != '#')) {
    throw flavokg::ConfigError("namespace '" + config.ns + "' must end with '/' or '#'");
  }
  return config;
}

int report(const std::vector<flavokg::Finding>& findings) {
  return flavokg::has_errors(findings) ? kExitFailure : kExitOk;
}

int run_queries(const flavokg::PipelineConfig& config, const std::vector<std::string>& exprs) {
  using namespace flavokg;
  KnowledgeGraph graph = load_graph(config.output_dir / artifact::kNodes,
                                    config.output_dir / artifact::kEdges);
  Schema schema = make_schema(config);
  Normalizer normalizer = make_normalizer(config);

  std::vector<std::string> queries = exprs;
  if (queries.empty()) {
    std::string line;
    while (std::getline(std::cin, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (csv::trim(line).empty() || line.starts_with('#')) continue;
      queries.push_back(line);
    }
  }

  bool first = true;
  for (const auto& text : queries) {
    QueryAst ast;
    try {
      ast = parse_query(text, schema);
    } catch (const QuerySyntaxError& e) {
      std::cerr << "flavokg: query syntax error at " << e.what() << "\n  " << text << "\n  "
                << std::string(e.column() - 1, ' ') << "^\n";
      return kExitUsage;
    }
    QueryResult result = execute(ast, graph, normalizer);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
    if (!first) std::cout << "\n";
    first = false;
    std::cout << write_result_tsv(result.table);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build a food/flavonoid/disease knowledge graph and ontology"};
  app.failure_message(CLI::FailureMessage::help);
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string("flavokg ") + kVersion);

  GlobalOptions opts;
  app.add_option("-c,--config", opts.config,
                 std::string("pipeline config JSON (default: $") + kConfigEnv + ")");
  app.add_option("-o,--output-dir", opts.output_dir, "override output_dir");
  app.add_option("--namespace", opts.ns, "override the namespace IRI");

  auto* ingest = app.add_subcommand("ingest", "parse input tables into ingested.json");
  auto* normalize = app.add_subcommand("normalize", "merge labels into canonical entities");
  auto* map = app.add_subcommand("map", "map entities to vocabularies or mint IRIs");

  auto* graph = app.add_subcommand("graph", "knowledge graph stages");
  graph->require_subcommand(1);
  auto* graph_build = graph->add_subcommand("build", "build the graph and export CSVs");
  auto* graph_export = graph->add_subcommand("export", "reload and re-export the graph CSVs");

  auto* tmpl = app.add_subcommand("template", "template sheet stages");
  tmpl->require_subcommand(1);
  auto* tmpl_emit = tmpl->add_subcommand("emit", "write layered template sheets");

  auto* owl = app.add_subcommand("owl", "ontology stages");
  owl->require_subcommand(1);
  auto* owl_build = owl->add_subcommand("build", "expand and merge templates into ontology.ttl");

  auto* query = app.add_subcommand("query", "run queries (stdin, one per line, or -e)");
  std::vector<std::string> exprs;
  query->add_option("-e,--expr", exprs, "query text; may repeat");

  auto* validate = app.add_subcommand("validate", "check the graph and ontology");
  std::string nodes_path, edges_path, ontology_path;
  validate->add_option("--nodes", nodes_path, "graph nodes CSV");
  validate->add_option("--edges", edges_path, "graph edges CSV");
  validate->add_option("--ontology", ontology_path, "Turtle ontology to check");

  auto* pipeline = app.add_subcommand("pipeline", "run every stage");
  pipeline->require_subcommand(1);
  auto* pipeline_run = pipeline->add_subcommand("run", "all stages in order");

  // CLI11 reports a stray word as a missing subcommand; name it instead.
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "-c" || arg == "--config" || arg == "-o" || arg == "--output-dir" ||
        arg == "--namespace") {
      ++i;
      continue;
    }
    if (arg.starts_with("-")) continue;
    if (app.get_subcommand_no_throw(arg) == nullptr) {
      std::cerr << "flavokg: unknown subcommand '" << arg << "'\n" << app.help();
      return kExitUsage;
    }
    break;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, std::cout, std::cerr);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    bool need_inputs = ingest->parsed() || pipeline_run->parsed();
    bool any_config = need_inputs || normalize->parsed() || map->parsed() ||
                      graph_build->parsed() || tmpl_emit->parsed();
    flavokg::PipelineConfig config = resolve_config(opts, any_config);
    std::ostream& log = std::cerr;

    if (ingest->parsed()) flavokg::stage_ingest(config, log);
    if (normalize->parsed()) flavokg::stage_normalize(config, log);
    if (map->parsed()) flavokg::stage_map(config, log);
    if (graph_build->parsed()) flavokg::stage_graph_build(config, log);
    if (graph_export->parsed()) flavokg::stage_graph_export(config, log);
    if (tmpl_emit->parsed()) flavokg::stage_template_emit(config, log);
    if (owl_build->parsed()) flavokg::stage_owl_build(config, log);
    if (query->parsed()) return run_queries(config, exprs);
    if (validate->parsed()) {
      flavokg::ValidateInputs inputs;
      if (!nodes_path.empty()) inputs.nodes = nodes_path;
      if (!edges_path.empty()) inputs.edges = edges_path;
      if (!ontology_path.empty()) inputs.ontology = ontology_path;
      return report(flavokg::stage_validate(config, inputs, log));
    }
    if (pipeline_run->parsed()) return report(flavokg::run_pipeline(config, log));
    return kExitOk;
  } catch (const flavokg::ConfigError& e) {
    std::cerr << "flavokg: config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "flavokg: " << e.what() << "\n";
    return kExitFailure;
  }
}
