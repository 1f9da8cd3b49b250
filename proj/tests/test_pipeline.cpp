#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>

#include "fixtures.hpp"
#include "kgforge/error.hpp"
#include "kgforge/pipeline.hpp"

using namespace kgforge;
namespace ts = kgforge::testsupport;
namespace fsys = std::filesystem;

#ifndef KGFORGE_CLI_PATH
#error "KGFORGE_CLI_PATH must be defined"
#endif

namespace {

fsys::path fixture() { return ts::data_dir() / "fixture4"; }

PipelineConfig fixture_config(const fsys::path& workspace) {
  auto values = parse_config_values(ts::read_file(fixture() / "pipeline.conf"));
  values["workspace"] = workspace.string();
  return config_from_values(values, fixture());
}

std::vector<StageOutcome::Status> statuses(const PipelineReport& r) {
  std::vector<StageOutcome::Status> out;
  for (const auto& s : r.stages) out.push_back(s.status);
  return out;
}

int run_cli(const std::string& args) {
  const int rc = std::system((std::string(KGFORGE_CLI_PATH) + " " + args + " 2>/dev/null").c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST(Config, MissingDumpDirNamesKey) {
  try {
    config_from_values(parse_config_values("workspace=/tmp/x\n"));
    FAIL() << "expected a config error";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "dumpDir");
  }
}

TEST(Config, UnknownKeyAndBadValues) {
  const std::string base = "workspace=/tmp/x\ndumpDir=/tmp\n";
  auto key_of = [&](const std::string& extra) {
    try {
      config_from_values(parse_config_values(base + extra));
    } catch (const ConfigError& e) {
      return e.key();
    }
    return std::string("<none>");
  };
  EXPECT_EQ(key_of("colour=blue\n"), "colour");
  EXPECT_EQ(key_of("linkage=average\n"), "linkage");
  EXPECT_EQ(key_of("workers=0\n"), "workers");
  EXPECT_EQ(key_of("matcher=external\n"), "matcherCommand");
  EXPECT_EQ(key_of("jaccardThreshold=2\n"), "jaccardThreshold");
  EXPECT_EQ(key_of("# comment\n\nlinkage=single\n"), "<none>");
  EXPECT_THROW(parse_config_values("no equals sign\n"), ParseError);
}

TEST(Config, RelativePathsResolveAgainstBase) {
  auto cfg = config_from_values(parse_config_values("workspace=ws\ndumpDir=dumps\n"), "/data/run");
  EXPECT_EQ(cfg.workspace, fsys::path("/data/run/ws"));
  EXPECT_EQ(cfg.dump_dir, fsys::path("/data/run/dumps"));
}

TEST(Pipeline, GoldenFullRun) {
  ts::TempDir ws("golden");
  auto report = run_pipeline(fixture_config(ws.path()), {std::begin(kAllStages), std::end(kAllStages)});
  ASSERT_TRUE(report.ok());
  std::size_t compared = 0;
  for (const auto& entry : fsys::recursive_directory_iterator(fixture() / "golden")) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fsys::relative(entry.path(), fixture() / "golden");
    ASSERT_TRUE(fsys::exists(ws.path() / rel)) << rel;
    EXPECT_EQ(ts::read_file(ws.path() / rel), ts::read_file(entry.path())) << rel;
    ++compared;
  }
  EXPECT_GE(compared, 10U);
}

TEST(Pipeline, SecondInvocationIsNoOp) {
  ts::TempDir ws("resume");
  const auto cfg = fixture_config(ws.path());
  const std::vector<Stage> all(std::begin(kAllStages), std::end(kAllStages));
  ASSERT_TRUE(run_pipeline(cfg, all).ok());
  const auto fused = ts::read_file(ws / "fused.nt");
  auto again = run_pipeline(cfg, all);
  ASSERT_TRUE(again.ok());
  for (auto s : statuses(again)) EXPECT_EQ(s, StageOutcome::Status::Skipped);
  EXPECT_EQ(ts::read_file(ws / "fused.nt"), fused);
}

TEST(Pipeline, MissingUpstreamNamesStage) {
  ts::TempDir ws("upstream");
  const auto cfg = fixture_config(ws.path());
  auto empty = run_pipeline(cfg, {Stage::Fuse});
  ASSERT_FALSE(empty.ok());
  EXPECT_NE(empty.stages.back().detail.find("run 'kgforge extract' first"), std::string::npos);
  ASSERT_TRUE(run_pipeline(cfg, {Stage::Extract}).ok());
  auto report = run_pipeline(cfg, {Stage::Plan});
  ASSERT_FALSE(report.ok());
  EXPECT_NE(report.stages.back().detail.find("featurize"), std::string::npos) << report.stages.back().detail;
}

TEST(Pipeline, ConfigChangeInvalidatesDownstream) {
  ts::TempDir ws("invalidate");
  auto cfg = fixture_config(ws.path());
  const std::vector<Stage> all(std::begin(kAllStages), std::end(kAllStages));
  ASSERT_TRUE(run_pipeline(cfg, all).ok());
  cfg.linkage = Linkage::Single;
  auto report = run_pipeline(cfg, all);
  ASSERT_TRUE(report.ok());
  auto st = statuses(report);
  EXPECT_EQ(st[0], StageOutcome::Status::Skipped);
  EXPECT_EQ(st[1], StageOutcome::Status::Skipped);
  EXPECT_EQ(st[2], StageOutcome::Status::Ran);
}

TEST(Pipeline, SingleStageAfterFullRun) {
  ts::TempDir ws("single");
  auto cfg = fixture_config(ws.path());
  ASSERT_TRUE(run_pipeline(cfg, {std::begin(kAllStages), std::end(kAllStages)}).ok());
  fsys::remove(ws / "reports/profile.tsv");
  auto report = run_pipeline(cfg, {Stage::Analyze});
  ASSERT_TRUE(report.ok());
  ASSERT_EQ(report.stages.size(), 1U);
  EXPECT_EQ(report.stages[0].status, StageOutcome::Status::Ran);
  EXPECT_TRUE(fsys::exists(ws / "reports/profile.tsv"));
}

TEST(Pipeline, ExtractFailureReported) {
  ts::TempDir ws("bad");
  ts::TempDir dumps("baddumps");
  std::ofstream(dumps / "broken.xml") << "<mediawiki><page><title>x</page>";
  PipelineConfig cfg;
  cfg.workspace = ws.path();
  cfg.dump_dir = dumps.path();
  auto report = run_pipeline(cfg, {Stage::Extract});
  ASSERT_FALSE(report.ok());
  EXPECT_EQ(report.stages[0].status, StageOutcome::Status::Failed);
  EXPECT_TRUE(fsys::exists(ws / "log/summary.tsv"));
}

TEST(Cli, ExitCodes) {
  ts::TempDir ws("cli");
  const auto conf = ws / "run.conf";
  std::ofstream(conf) << "workspace=" << (ws / "w").string() << "\ndumpDir=" << (fixture() / "dumps").string() << "\n";
  const auto missing = ws / "missing.conf";
  std::ofstream(missing) << "workspace=" << (ws / "w").string() << "\n";
  EXPECT_EQ(run_cli("all --config " + missing.string()), 2);
  EXPECT_EQ(run_cli("fuse --config " + conf.string()), 1);
  EXPECT_EQ(run_cli("all --config " + conf.string()), 0);
  EXPECT_EQ(run_cli("analyze --config " + conf.string()), 0);
  EXPECT_TRUE(fsys::exists(ws / "w/fused.nt"));
  EXPECT_NE(run_cli("bogus"), 0);
}
