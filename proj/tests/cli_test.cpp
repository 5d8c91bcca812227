#include <gtest/gtest.h>

#include "test_support.hpp"

using testing_support::copy_fixture;
using testing_support::run_cli;
using testing_support::scratch_dir;
using testing_support::slurp;
using testing_support::spit;

namespace {

const std::string kMilk =
    "Milk, chocolate, fluid, commercial, reduced fat, with added vitamin A and vitamin D";

}  // namespace

TEST(Cli, VersionAndHelp) {
  auto dir = scratch_dir("cli_version");
  auto v = run_cli({"--version"}, dir);
  EXPECT_EQ(v.exit_code, 0);
  EXPECT_NE(v.out.find("flavokg 0.3.0"), std::string::npos);
  auto h = run_cli({"--help"}, dir);
  EXPECT_EQ(h.exit_code, 0);
  EXPECT_NE(h.out.find("pipeline"), std::string::npos);
}

TEST(Cli, UsageErrorsExit2) {
  auto dir = scratch_dir("cli_usage");
  auto r = run_cli({"frobnicate"}, dir);
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("unknown subcommand 'frobnicate'"), std::string::npos);
  EXPECT_EQ(run_cli({}, dir).exit_code, 2);
  EXPECT_EQ(run_cli({"ingest"}, dir).exit_code, 2);  // no config
  EXPECT_EQ(run_cli({"-c", (dir / "nope.json").string(), "pipeline", "run"}, dir).exit_code, 2);
  spit(dir / "bad.json", "{\"inputs\": {}, \"bogus\": true}");
  EXPECT_EQ(run_cli({"-c", (dir / "bad.json").string(), "pipeline", "run"}, dir).exit_code, 2);
  EXPECT_EQ(run_cli({"query", "--bogus-flag"}, dir).exit_code, 2);
}

TEST(Cli, PipelineAndQueries) {
  auto dir = scratch_dir("cli_pipeline");
  auto config = copy_fixture(dir).string();
  auto run = run_cli({"-c", config, "pipeline", "run"}, dir);
  ASSERT_EQ(run.exit_code, 0) << run.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "out" / "ontology.ttl"));

  auto q = run_cli({"-c", config, "query", "-e", "FOODS IN GROUP \"Dairy and Egg Products\"", "-e",
                    "FLAVONOIDS OF FOOD \"" + kMilk + "\""},
                   dir);
  ASSERT_EQ(q.exit_code, 0) << q.err;
  EXPECT_TRUE(q.out.starts_with("food\n" + kMilk + "\n\nflavonoid\tmean_mg_per_100g\n")) << q.out;
  EXPECT_NE(q.out.find("(+)-Catechin\t2\n"), std::string::npos);

  // stdin, blank and comment lines skipped
  auto s = run_cli({"-c", config, "query"}, dir,
                   "# dairy\n\nFOODS IN GROUP \"Dairy and Egg Products\"\n");
  EXPECT_EQ(s.exit_code, 0);
  EXPECT_EQ(s.out, "food\n" + kMilk + "\n");

  auto w = run_cli({"-c", config, "query", "-e", "FOODS IN GROUP \"Nothing\""}, dir);
  EXPECT_EQ(w.exit_code, 0);
  EXPECT_EQ(w.out, "food\n");
  EXPECT_NE(w.err.find("warning: "), std::string::npos);

  auto bad = run_cli({"-c", config, "query", "-e", "FOODS GROUP \"X\""}, dir);
  EXPECT_EQ(bad.exit_code, 2);
  EXPECT_NE(bad.err.find("column 7"), std::string::npos);
  EXPECT_NE(bad.err.find("      ^"), std::string::npos);

  // validate and query work from the output directory alone
  auto v = run_cli({"-o", (dir / "out").string(), "validate"}, dir);
  EXPECT_EQ(v.exit_code, 0) << v.err;
  auto q2 = run_cli({"-o", (dir / "out").string(), "query", "-e",
                     "FOODS IN GROUP \"Dairy and Egg Products\""},
                    dir);
  EXPECT_EQ(q2.out, "food\n" + kMilk + "\n");
}

TEST(Cli, StageFailureExit1) {
  auto dir = scratch_dir("cli_stage_fail");
  auto config = copy_fixture(dir).string();
  std::string contents = slurp(dir / "contents.csv");
  spit(dir / "contents.csv", contents + "99999,Quercetin,Flavonols,1.0,HPLC,raw\n");
  ASSERT_EQ(run_cli({"-c", config, "ingest"}, dir).exit_code, 0);
  ASSERT_EQ(run_cli({"-c", config, "normalize"}, dir).exit_code, 0);
  ASSERT_EQ(run_cli({"-c", config, "map"}, dir).exit_code, 0);
  auto g = run_cli({"-c", config, "graph", "build"}, dir);
  EXPECT_EQ(g.exit_code, 1);
  EXPECT_NE(g.err.find("99999"), std::string::npos);
}
