#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "kgforge/alignment.hpp"
#include "kgforge/graph.hpp"
#include "kgforge/tokenize.hpp"
#include "kgforge/vocab.hpp"

namespace kgforge {

/// Normalized labels per IRI: every rdfs:label literal of the IRI, or the
/// decoded IRI fragment when it has none. Labels are lowercased with
/// underscores turned into spaces.
class LabelIndex {
 public:
  LabelIndex() = default;
  explicit LabelIndex(const KnowledgeGraph& kg) { add(kg); }
  explicit LabelIndex(std::span<const KnowledgeGraph> kgs);

  void add(const KnowledgeGraph& kg);

  /// Sorted, distinct; falls back to the fragment for unknown IRIs.
  std::vector<std::string> labels(const Iri& iri) const;

 private:
  std::unordered_map<std::string, std::set<std::string>> labels_;
};

std::string fragment_label(const Iri& iri);

struct MatcherConfig {
  double jaccard_threshold = 0.8;
  std::set<EntityKind> kinds{EntityKind::Instance, EntityKind::Class, EntityKind::Property};
  Namespace ns;
  /// English list when null.
  std::shared_ptr<const StopwordList> stopwords;

  void validate() const;
};

/// Element-level matcher over labels. Exact normalized-label equality scores
/// 1.0; otherwise the token-set Jaccard of the labels counts when it reaches
/// the threshold (pairs without a shared token are never proposed). The
/// confidence is the maximum over all label pairs. Only entities of equal
/// kind are compared. Output sorted by (source, target); not yet 1:1.
Alignment match_pair(const KnowledgeGraph& a, const KnowledgeGraph& b, const MatcherConfig& cfg = {});

/// Naive descending: stable sort by confidence (ties by source, then target),
/// keep a correspondence iff neither side was kept before.
Alignment extract_one_to_one(const Alignment& al);

struct ExternalMatcherConfig {
  /// Shell command with `{A}`, `{B}` and `{OUT}` placeholders.
  std::string command;
  std::chrono::milliseconds timeout{std::chrono::minutes(30)};
};

/// Upper bound on concurrently running matcher processes (default 4).
void set_external_matcher_limit(unsigned limit);

/// Runs the command through /bin/sh, waits for it and reads the alignment it
/// wrote to `out`, then applies extract_one_to_one. Throws
/// ExternalMatcherError on a nonzero exit, a timeout, a missing output file
/// or an unparseable output line.
Alignment run_external_matcher(const ExternalMatcherConfig& cfg, const std::filesystem::path& a,
                               const std::filesystem::path& b, const std::filesystem::path& out);

}  // namespace kgforge
