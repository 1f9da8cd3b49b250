#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "kgforge/hac.hpp"

namespace kgforge {

struct MergeTask {
  std::int64_t left;
  std::int64_t right;
  std::int64_t output;

  friend bool operator==(const MergeTask&, const MergeTask&) = default;
};

/// Leveled execution schedule. Level 0 merges two leaves; a task sits one
/// level above the deepest task producing one of its inputs. Tasks of one
/// level are independent of each other.
struct MergePlan {
  std::int64_t leaves = 0;
  /// Optional names of the leaves (wiki ids), indexed by leaf id.
  std::vector<std::string> leaf_names;
  std::vector<std::vector<MergeTask>> levels;

  std::size_t task_count() const noexcept;
  /// Id of the final cluster; the single leaf when there are no tasks.
  std::int64_t root() const noexcept;
  bool is_leaf(std::int64_t id) const noexcept { return id < leaves; }
};

struct PlanStats {
  std::size_t height = 0;
  std::vector<std::size_t> merges_per_level;

  friend bool operator==(const PlanStats&, const PlanStats&) = default;
};

template <typename Scalar>
MergePlan plan_from_dendrogram(const Dendrogram<Scalar>& d) {
  validate_dendrogram(d);
  MergePlan plan;
  plan.leaves = d.leaves;
  std::vector<std::size_t> level_of(d.merges.size(), 0);
  for (std::size_t k = 0; k < d.merges.size(); ++k) {
    const auto& m = d.merges[k];
    std::size_t level = 0;
    for (auto child : {m.left, m.right}) {
      if (child >= d.leaves) level = std::max(level, level_of[static_cast<std::size_t>(child - d.leaves)] + 1);
    }
    level_of[k] = level;
    if (plan.levels.size() <= level) plan.levels.resize(level + 1);
    plan.levels[level].push_back({m.left, m.right, m.id});
  }
  return plan;
}

PlanStats plan_stats(const MergePlan& plan);

/// Throws ValidationError if a task reads an input that is not a leaf or an
/// output of a strictly earlier level, or if any input is consumed twice.
void validate_plan(const MergePlan& plan);

/// Text form:
///   leaves <n>
///   leaf <id> <name>        (optional, one per named leaf)
///   <blank line>
///   level <k>
///   <left> <right> -> <out>
std::string to_plan_text(const MergePlan& plan);
MergePlan parse_plan(std::string_view text);
void write_plan(const MergePlan& plan, const std::filesystem::path& path);
MergePlan read_plan(const std::filesystem::path& path);

}  // namespace kgforge
