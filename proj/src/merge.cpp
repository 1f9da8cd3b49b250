#include "kgforge/merge.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

#include "kgforge/error.hpp"
#include "kgforge/ntriples.hpp"
#include "kgforge/parallel.hpp"

namespace kgforge {

KnowledgeGraph merge_pair(const KnowledgeGraph& a, const KnowledgeGraph& b, const Alignment& al,
                          std::vector<std::string>* warnings) {
  const auto a_iris = a.iris();
  const auto b_iris = b.iris();
  auto in = [](const std::vector<Iri>& v, const Iri& x) { return std::binary_search(v.begin(), v.end(), x); };
  auto warn = [&](std::string msg) {
    if (warnings) warnings->push_back(std::move(msg));
  };

  std::unordered_map<std::string, const Iri*> rewrite;
  for (const auto& c : al) {
    const Iri* keep = nullptr;
    const Iri* replace = nullptr;
    if (in(a_iris, c.source) && in(b_iris, c.target)) {
      keep = &c.source;
      replace = &c.target;
    } else if (in(b_iris, c.source) && in(a_iris, c.target)) {
      keep = &c.target;
      replace = &c.source;
    } else {
      warn("skipping correspondence " + c.source.str() + " = " + c.target.str() +
           ": IRIs do not occur on opposite sides");
      continue;
    }
    rewrite.emplace(replace->str(), keep);
  }
  auto map = [&](const Iri& x) -> const Iri& {
    auto it = rewrite.find(x.str());
    return it == rewrite.end() ? x : *it->second;
  };

  std::vector<Triple> triples(a.triples().begin(), a.triples().end());
  triples.reserve(a.size() + b.size());
  for (const auto& t : b.triples()) {
    Object o = t.object;
    if (const Iri* oi = as_iri(t.object)) o = map(*oi);
    triples.push_back({map(t.subject), map(t.predicate), std::move(o)});
  }
  return KnowledgeGraph(a.id() + "+" + b.id(), std::move(triples));
}

std::string node_name(const MergePlan& plan, std::int64_t id) {
  if (plan.is_leaf(id)) {
    if (!plan.leaf_names.empty()) return plan.leaf_names.at(static_cast<std::size_t>(id));
    return std::to_string(id);
  }
  return "m" + std::to_string(id);
}

namespace {

MergeTaskResult run_task(const MergePlan& plan, const MergeTask& task, const RunLayout& layout,
                         const ExecutionOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  MergeTaskResult result;
  result.output_id = node_name(plan, task.output);
  result.alignment_path = layout.alignment(result.output_id);
  result.union_path = layout.union_graph(result.output_id);
  if (std::filesystem::exists(result.alignment_path) && std::filesystem::exists(result.union_path)) {
    result.reused = true;
    result.correspondences = read_alignment_file(result.alignment_path).size();
    result.elapsed = std::chrono::steady_clock::now() - started;
    return result;
  }

  auto path_of = [&](std::int64_t id) {
    auto name = node_name(plan, id);
    return plan.is_leaf(id) ? layout.leaf_graph(name) : layout.union_graph(name);
  };
  struct Input {
    std::string name;
    std::filesystem::path path;
    KnowledgeGraph kg;
  };
  Input x{node_name(plan, task.left), path_of(task.left), {}};
  Input y{node_name(plan, task.right), path_of(task.right), {}};
  x.kg = read_ntriples_file(x.path).with_id(x.name);
  y.kg = read_ntriples_file(y.path).with_id(y.name);
  bool x_is_a = x.kg.size() > y.kg.size() || (x.kg.size() == y.kg.size() && x.name < y.name);
  const Input& a = x_is_a ? x : y;
  const Input& b = x_is_a ? y : x;

  Alignment al;
  if (options.matcher.external) {
    auto scratch = layout.workspace / "alignments" / (result.output_id + ".external.tsv");
    al = run_external_matcher(*options.matcher.external, a.path, b.path, scratch);
    std::filesystem::remove(scratch);
  } else {
    al = extract_one_to_one(match_pair(a.kg, b.kg, options.matcher.builtin));
  }
  std::sort(al.begin(), al.end(), [](const Correspondence& p, const Correspondence& q) {
    return std::tie(p.source, p.target) < std::tie(q.source, q.target);
  });
  auto merged = merge_pair(a.kg, b.kg, al).with_id(result.output_id);
  write_alignment_file(al, result.alignment_path);
  write_ntriples_file(merged, result.union_path);
  result.correspondences = al.size();
  result.elapsed = std::chrono::steady_clock::now() - started;
  return result;
}

}  // namespace

ExecutionResult execute_plan(const MergePlan& plan, const std::filesystem::path& workspace,
                             const ExecutionOptions& options) {
  validate_plan(plan);
  const RunLayout layout{workspace};
  for (std::int64_t leaf = 0; leaf < plan.leaves; ++leaf) {
    auto path = layout.leaf_graph(node_name(plan, leaf));
    if (!std::filesystem::exists(path)) throw Error("missing leaf graph " + path.string());
  }
  ExecutionResult out;
  if (plan.levels.empty()) {
    out.root = read_ntriples_file(layout.leaf_graph(node_name(plan, 0))).with_id(node_name(plan, 0));
    return out;
  }
  std::filesystem::create_directories(workspace / "alignments");
  std::filesystem::create_directories(workspace / "unions");

  for (std::size_t level = 0; level < plan.levels.size(); ++level) {
    const auto& tasks = plan.levels[level];
    std::vector<MergeTaskResult> results(tasks.size());
    std::vector<std::string> failures(tasks.size());
    std::mutex report;
    parallel_for_each_index(tasks.size(), options.workers, [&](std::size_t i) {
      try {
        results[i] = run_task(plan, tasks[i], layout, options);
        if (options.on_task) {
          std::lock_guard lock(report);
          options.on_task(results[i]);
        }
      } catch (const std::exception& e) {
        failures[i] = node_name(plan, tasks[i].output) + ": " + e.what();
      }
    });
    std::string failed;
    for (const auto& f : failures) {
      if (!f.empty()) failed += (failed.empty() ? "" : "; ") + f;
    }
    if (!failed.empty()) throw Error("merge level " + std::to_string(level) + " failed: " + failed);
    for (auto& r : results) out.tasks.push_back(std::move(r));
  }
  const auto root = node_name(plan, plan.root());
  out.root = read_ntriples_file(layout.union_graph(root)).with_id(root);
  return out;
}

}  // namespace kgforge
