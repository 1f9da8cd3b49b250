#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgforge/hac.hpp"
#include "kgforge/vocab.hpp"

namespace kgforge {

enum class Stage { Extract, Featurize, Plan, Run, Fuse, Analyze };

inline constexpr Stage kAllStages[] = {Stage::Extract, Stage::Featurize, Stage::Plan,
                                       Stage::Run,     Stage::Fuse,      Stage::Analyze};

std::string_view to_string(Stage s) noexcept;
Stage stage_from_string(std::string_view s);

struct PipelineConfig {
  std::filesystem::path workspace;
  std::filesystem::path dump_dir;
  /// Built-in matcher unless a command template is set.
  std::optional<std::string> matcher_command;
  std::chrono::milliseconds matcher_timeout{std::chrono::minutes(30)};
  unsigned max_matcher_processes = 4;
  Linkage linkage = Linkage::Complete;
  double jaccard_threshold = 0.8;
  std::optional<std::filesystem::path> stopword_file;
  std::optional<std::filesystem::path> synonym_file;
  std::optional<std::filesystem::path> reference_alignment;
  unsigned workers = 1;
  double min_share = 0.01;
  std::size_t top_k = 10;
  std::string base_iri{vocab::kDefaultBase};
  bool abstracts = true;
};

/// Raw `key=value` settings; blank lines and `#` comments are skipped.
using ConfigValues = std::map<std::string, std::string>;

ConfigValues parse_config_values(std::string_view text);

/// Builds a validated configuration. Relative paths are resolved against
/// `base_dir`. Throws ConfigError naming the key that is missing or invalid.
PipelineConfig config_from_values(const ConfigValues& values, const std::filesystem::path& base_dir = {});

struct StageOutcome {
  Stage stage;
  enum class Status { Ran, Skipped, Failed } status;
  double seconds = 0.0;
  std::string detail;
};

struct PipelineReport {
  std::vector<StageOutcome> stages;
  bool ok() const;
};

using LogSink = std::function<void(std::string_view)>;

/// Runs the requested stages in pipeline order over the workspace. A stage
/// whose recorded key (a hash of its settings, inputs and upstream keys)
/// matches and whose artifacts exist is skipped. A stage that is not
/// requested but whose output is needed must have completed earlier. Writes
/// `manifest.tsv` and `log/summary.tsv`. Never throws for stage failures;
/// they are reported as Failed and stop the run.
PipelineReport run_pipeline(const PipelineConfig& config, const std::vector<Stage>& stages, const LogSink& log = {});

}  // namespace kgforge
