#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kgforge/alignment.hpp"
#include "kgforge/graph.hpp"
#include "kgforge/match.hpp"
#include "kgforge/merge_plan.hpp"

namespace kgforge {

/// a ∪ rewrite(b): every b-IRI matched by the alignment is replaced by its
/// a-counterpart in subject, predicate and object position. Correspondences
/// pointing from b to a are read reversed; those naming IRIs found in
/// neither graph are skipped with a warning. The result id is "<a>+<b>".
KnowledgeGraph merge_pair(const KnowledgeGraph& a, const KnowledgeGraph& b, const Alignment& al,
                          std::vector<std::string>* warnings = nullptr);

struct MatcherSelection {
  MatcherConfig builtin;
  /// Runs this external command instead of the built-in matcher when set.
  std::optional<ExternalMatcherConfig> external;
};

struct MergeTaskResult {
  std::string output_id;
  std::filesystem::path alignment_path;
  std::filesystem::path union_path;
  std::chrono::duration<double> elapsed{};
  bool reused = false;
  std::size_t correspondences = 0;
};

struct ExecutionOptions {
  MatcherSelection matcher;
  unsigned workers = 1;
  /// Reports finished or skipped tasks; called from worker threads.
  std::function<void(const MergeTaskResult&)> on_task;
};

struct ExecutionResult {
  KnowledgeGraph root;
  std::vector<MergeTaskResult> tasks;  // plan order
};

/// Workspace paths used by execute_plan.
struct RunLayout {
  std::filesystem::path workspace;

  std::filesystem::path leaf_graph(const std::string& name) const { return workspace / "kgs" / (name + ".nt"); }
  std::filesystem::path union_graph(const std::string& id) const { return workspace / "unions" / (id + ".nt"); }
  std::filesystem::path alignment(const std::string& id) const { return workspace / "alignments" / (id + ".tsv"); }
};

/// Name of a plan node: the leaf name for leaves, "m<id>" for merge outputs.
std::string node_name(const MergePlan& plan, std::int64_t id);

/// Runs every task level by level; tasks within a level run on `workers`
/// threads. Each task loads both inputs, matches them (built-in matcher or
/// external process), enforces 1:1, and merges with the graph holding more
/// triples as role A (ties: smaller name). The alignment and the union are
/// written atomically; tasks whose artifacts both exist are reused. Throws
/// before running anything if a leaf graph is missing, and after the level
/// in which any task failed.
ExecutionResult execute_plan(const MergePlan& plan, const std::filesystem::path& workspace,
                             const ExecutionOptions& options = {});

}  // namespace kgforge
