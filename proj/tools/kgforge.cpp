// Command-line driver: one subcommand per pipeline stage plus `all`.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kgforge/error.hpp"
#include "kgforge/fs.hpp"
#include "kgforge/pipeline.hpp"

int main(int argc, char** argv) {
  using namespace kgforge;
  CLI::App app{"kgforge: extract, match and fuse knowledge graphs from wiki dumps"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string workspace;
  std::string dump_dir;
  std::string matcher;
  std::string linkage;
  unsigned workers = 0;
  app.add_option("--config", config_path, "key=value configuration file");
  app.add_option("--workspace", workspace, "workspace directory (overrides 'workspace')");
  app.add_option("--dump-dir", dump_dir, "directory of <wiki>.xml dumps (overrides 'dumpDir')");
  app.add_option("--workers", workers, "worker threads (overrides 'workers')")->check(CLI::PositiveNumber);
  app.add_option("--matcher", matcher, "'builtin', or a command template with {A} {B} {OUT}");
  app.add_option("--linkage", linkage, "single or complete")->check(CLI::IsMember({"single", "complete"}));

  std::vector<Stage> stages;
  for (auto stage : kAllStages) {
    auto name = std::string(to_string(stage));
    app.add_subcommand(name, "run the " + name + " stage")->callback([&stages, stage] { stages = {stage}; });
  }
  app.add_subcommand("all", "run every stage")->callback([&stages] {
    stages.assign(std::begin(kAllStages), std::end(kAllStages));
  });

  CLI11_PARSE(app, argc, argv);

  auto log = [](std::string_view msg) { std::cerr << "kgforge: " << msg << '\n'; };
  PipelineConfig config;
  try {
    ConfigValues values;
    std::filesystem::path base;
    if (!config_path.empty()) {
      values = parse_config_values(fs::read_text(config_path));
      base = std::filesystem::path(config_path).parent_path();
    }
    if (!workspace.empty()) values["workspace"] = std::filesystem::absolute(workspace).string();
    if (!dump_dir.empty()) values["dumpDir"] = std::filesystem::absolute(dump_dir).string();
    if (workers > 0) values["workers"] = std::to_string(workers);
    if (!linkage.empty()) values["linkage"] = linkage;
    if (!matcher.empty()) {
      if (matcher == "builtin") {
        values["matcher"] = "builtin";
      } else {
        values["matcher"] = "external";
        values["matcherCommand"] = matcher;
      }
    }
    config = config_from_values(values, base);
  } catch (const ConfigError& e) {
    log(std::string("configuration error (") + e.key() + "): " + e.what());
    return 2;
  } catch (const Error& e) {
    log(std::string("configuration error: ") + e.what());
    return 2;
  }

  auto report = run_pipeline(config, stages, log);
  return report.ok() ? 0 : 1;
}
