#include <gtest/gtest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "flavokg/error.hpp"
#include "flavokg/pipeline.hpp"
#include "test_support.hpp"

using namespace flavokg;
using testing_support::copy_fixture;
using testing_support::scratch_dir;
using testing_support::slurp;
using testing_support::spit;

namespace {

nlohmann::json fixture_json() {
  return nlohmann::json::parse(slurp(fs::path(FLAVOKG_FIXTURE_DIR) / "config.json"));
}

PipelineConfig config_in(const fs::path& dir, const nlohmann::json& j) {
  spit(dir / "config.json", j.dump(2));
  return load_config(dir / "config.json");
}

std::vector<std::string> artifacts_of(const fs::path& out) {
  std::vector<std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(out))
    if (e.is_regular_file()) files.push_back(fs::relative(e.path(), out).string());
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

TEST(Config, LoadsFixture) {
  auto config = load_config(fs::path(FLAVOKG_FIXTURE_DIR) / "config.json");
  EXPECT_EQ(config.ns, "http://example.org/ff/");
  EXPECT_EQ(config.vocabularies.size(), 3u);
  EXPECT_EQ(config.foods, fs::path(FLAVOKG_FIXTURE_DIR) / "foods.csv");
  EXPECT_EQ(config.output_dir, fs::path(FLAVOKG_FIXTURE_DIR) / "out");
  EXPECT_NO_THROW(check_config(config));
}

TEST(Config, ParseErrors) {
  fs::path base = "/tmp";
  EXPECT_THROW(parse_config("{", base), ConfigError);
  EXPECT_THROW(parse_config("[]", base), ConfigError);
  auto j = fixture_json();
  j["surprise"] = 1;
  EXPECT_THROW(parse_config(j.dump(), base), ConfigError);
  j = fixture_json();
  j["inputs"].erase("foods");
  EXPECT_THROW(parse_config(j.dump(), base), ConfigError);
  j = fixture_json();
  j["namespace"] = 7;
  EXPECT_THROW(parse_config(j.dump(), base), ConfigError);
  j = fixture_json();
  j["vocabulary_order"]["planet"] = nlohmann::json::array();
  EXPECT_THROW(parse_config(j.dump(), base), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);
}

TEST(Config, CheckErrors) {
  fs::path dir = scratch_dir("config_check");
  copy_fixture(dir);
  auto j = fixture_json();
  j["namespace"] = "http://example.org/ff";
  EXPECT_THROW(check_config(config_in(dir, j)), ConfigError);
  j = fixture_json();
  j["inputs"]["foods"] = "missing.csv";
  EXPECT_THROW(check_config(config_in(dir, j)), ConfigError);
  j = fixture_json();
  j["vocabularies"].push_back({{"name", "chebi"}, {"path", "chebi.tsv"}});
  EXPECT_THROW(check_config(config_in(dir, j)), ConfigError);
  j = fixture_json();
  j["vocabulary_order"]["food"].push_back("mesh");
  EXPECT_THROW(check_config(config_in(dir, j)), ConfigError);
}

TEST(Pipeline, StagesMatchFullRun) {
  fs::path a = scratch_dir("stages_a"), b = scratch_dir("stages_b");
  auto ca = load_config(copy_fixture(a));
  auto cb = load_config(copy_fixture(b));
  std::ostringstream log;
  stage_ingest(ca, log);
  stage_normalize(ca, log);
  stage_map(ca, log);
  stage_graph_build(ca, log);
  stage_graph_export(ca, log);
  stage_template_emit(ca, log);
  stage_owl_build(ca, log);
  auto fa = stage_validate(ca, {}, log);
  auto fb = run_pipeline(cb, log);
  EXPECT_EQ(fa, fb);
  EXPECT_FALSE(has_errors(fb));
  auto files = artifacts_of(ca.output_dir);
  ASSERT_EQ(files, artifacts_of(cb.output_dir));
  for (const auto& f : files) {
    EXPECT_EQ(slurp(ca.output_dir / f), slurp(cb.output_dir / f)) << f;
  }
  for (auto name : {artifact::kOntology, artifact::kFindings, artifact::kCoverage,
                    artifact::kMappings, artifact::kMergeReport, artifact::kMappingReport}) {
    EXPECT_TRUE(fs::exists(ca.output_dir / name)) << name;
  }
}

TEST(Pipeline, StageNeedsEarlierArtifacts) {
  fs::path dir = scratch_dir("stage_order");
  auto config = load_config(copy_fixture(dir));
  std::ostringstream log;
  EXPECT_THROW(stage_map(config, log), Error);
}

TEST(Pipeline, FixtureMappings) {
  fs::path dir = scratch_dir("fixture_mappings");
  auto config = load_config(copy_fixture(dir));
  std::ostringstream log;
  run_pipeline(config, log);
  auto mappings = read_mappings(slurp(config.output_dir / artifact::kMappings));
  std::map<std::string, MappingResult> by_key;
  for (const auto& m : mappings) by_key[m.entity_key] = m;
  EXPECT_EQ(by_key.at("colon cancer").iri_or_curie, "DOID:219");
  EXPECT_EQ(by_key.at("colon cancer").outcome, MatchOutcome::exact_label);
  EXPECT_EQ(by_key.at("rectal cancer").iri_or_curie, "DOID:1993");
  EXPECT_EQ(by_key.at("luteolin").iri_or_curie, "CHEBI:15864");
  EXPECT_EQ(by_key.at("(+)-catechin").iri_or_curie, "CHEBI:15600");
  EXPECT_EQ(by_key.at("green tea").outcome, MatchOutcome::minted);  // curation override key
  EXPECT_EQ(by_key.count("apples"), 0u);
}

TEST(Pipeline, CuratedIdMustBeKnown) {
  fs::path dir = scratch_dir("curated_id");
  auto config = load_config(copy_fixture(dir));
  std::string assoc = slurp(dir / "associations.csv");
  auto pos = assoc.find("DOID:219");
  ASSERT_NE(pos, std::string::npos);
  assoc.replace(pos, 8, "DOID:999");
  spit(dir / "associations.csv", assoc);
  std::ostringstream log;
  EXPECT_THROW(run_pipeline(config, log), Error);
}

TEST(Pipeline, IngestedJsonRoundTrip) {
  auto config = load_config(fs::path(FLAVOKG_FIXTURE_DIR) / "config.json");
  auto tables = ingest_tables(config);
  auto back = ingested_from_json(ingested_to_json(tables));
  EXPECT_EQ(back.foods, tables.foods);
  EXPECT_EQ(back.contents, tables.contents);
  EXPECT_EQ(back.associations, tables.associations);
  EXPECT_EQ(back.drugs, tables.drugs);
}
