#pragma once

#include <cstddef>
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "kgforge/alignment.hpp"
#include "kgforge/fuse.hpp"
#include "kgforge/graph.hpp"
#include "kgforge/match.hpp"
#include "kgforge/vocab.hpp"

namespace kgforge {

struct KindStats {
  EntityKind kind = EntityKind::Other;
  std::size_t sets = 0;
  std::size_t min_size = 0;
  std::size_t max_size = 0;
  std::size_t total_size = 0;
  double mean_size = 0.0;
  double stddev_size = 0.0;  // population
};

struct ClosureStats {
  /// One row per kind with at least one set, in kind order.
  std::vector<KindStats> rows;
  /// Kinds without sets.
  std::vector<EntityKind> omitted;
};

ClosureStats closure_stats(std::span<const IdentitySet> sets);

/// Fraction of correspondences whose two entities share no normalized label.
/// 0 for no correspondences.
double same_label_fraction(std::span<const Alignment> alignments, const LabelIndex& labels);

struct MatchedEntry {
  std::string label;
  std::size_t size;

  friend bool operator==(const MatchedEntry&, const MatchedEntry&) = default;
};

std::set<std::string> default_service_pages();

/// Largest sets of `kind` (ties: label), labelled with the most frequent
/// member label (ties: smallest). Members labelled as service pages are
/// removed first; sets left without members disappear.
std::vector<MatchedEntry> top_matched(std::span<const IdentitySet> sets, std::size_t k, EntityKind kind,
                                      const LabelIndex& labels,
                                      const std::set<std::string>& blocklist = default_service_pages());

struct Scores {
  EntityKind kind = EntityKind::Other;
  std::size_t system = 0;
  std::size_t reference = 0;
  std::size_t correct = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct EvalResult {
  /// One row per kind present in the system or the reference, in kind order.
  std::vector<Scores> rows;
  Scores overall;
};

/// Correspondences compared as unordered IRI pairs, ignoring confidence.
/// A pair is filed under the kind of its lexicographically smaller IRI.
/// Precision and recall are 0 for an empty side.
EvalResult evaluate_alignment(const Alignment& system, const Alignment& reference, const Namespace& ns = {});

struct KgProfile {
  std::size_t instances = 0;
  std::size_t classes = 0;
  std::size_t infobox_classes = 0;
  std::size_t properties = 0;
  std::size_t assertions = 0;

  friend bool operator==(const KgProfile&, const KgProfile&) = default;
};

/// Distinct IRIs per kind; assertions exclude label, comment and meta
/// predicates.
KgProfile kg_profile(const KnowledgeGraph& kg, const Namespace& ns = {});

/// Nested {name, value, children} records: classes by typed-instance count,
/// each split by source wiki through usedIn. Classes whose share of all
/// typed instances is below `min_share`, and wikis below `min_share` of
/// their class, go to an "other" bucket.
nlohmann::ordered_json class_distribution(const KnowledgeGraph& kg, double min_share, const Namespace& ns = {});

std::string to_tsv(const ClosureStats& s);
std::string to_tsv(const std::vector<MatchedEntry>& top);
std::string to_tsv(const EvalResult& r);
std::string to_tsv(const KgProfile& p);

}  // namespace kgforge
