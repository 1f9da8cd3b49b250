#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "kgforge/alignment.hpp"
#include "kgforge/extract.hpp"
#include "kgforge/graph.hpp"
#include "kgforge/vocab.hpp"

namespace kgforge {

/// Disjoint sets over IRIs with path compression and union by rank.
class UnionFind {
 public:
  /// Index of `iri`, adding it as a singleton when new.
  std::size_t add(const Iri& iri);
  std::size_t find(std::size_t x);
  void unite(std::size_t a, std::size_t b);

  std::size_t size() const noexcept { return iris_.size(); }
  const Iri& iri(std::size_t x) const { return iris_[x]; }

 private:
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Iri> iris_;
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
};

struct IdentitySet {
  std::vector<Iri> members;  // sorted, at least two
  EntityKind kind = EntityKind::Other;
  std::optional<Iri> canonical;
};

/// Connected components of the undirected correspondence graph, singletons
/// dropped. Sets come sorted by their smallest member, members sorted, so
/// the result does not depend on alignment order. A set mixing entity kinds
/// takes the majority kind (ties: declaration order) and adds a warning.
std::vector<IdentitySet> transitive_closure(std::span<const Alignment> alignments, const Namespace& ns = {},
                                            std::vector<std::string>* warnings = nullptr);

/// Canonical IRI of every member of every set and of every other entity in
/// `all_iris`. Sets are handled by descending size (ties: smallest member)
/// and named after their most frequent fragment (ties: smallest); unmatched
/// entities follow in IRI order, keeping their fragment. A name already
/// taken gets `_1`, `_2`, ... appended. Canonical IRIs live in the wiki
/// namespace "fused" of `ns`. IRIs of kind Other are left out and map to
/// themselves. Fills in IdentitySet::canonical.
using CanonicalMap = std::unordered_map<std::string, Iri>;
CanonicalMap canonical_uris(std::vector<IdentitySet>& sets, std::span<const Iri> all_iris, const Namespace& ns = {});

/// Looks `iri` up in the map; identity when absent.
const Iri& canonical_of(const CanonicalMap& canon, const Iri& iri);

struct FusionResult {
  KnowledgeGraph graph;
  std::vector<std::string> warnings;
};

/// Union of all graphs rewritten through `canon`, plus provenance: each
/// instance that is a subject in graph g gets (c, usedIn, wiki(g)), and each
/// wiki resource carries its id and whatever metadata is known.
FusionResult fuse_kgs(std::span<const KnowledgeGraph> kgs, const CanonicalMap& canon,
                      std::span<const WikiMetadata> metadata, const Namespace& ns = {}, unsigned workers = 1);

/// `canonical<TAB>member` per line, sorted.
std::string to_closure_tsv(const std::vector<IdentitySet>& sets);
void write_closure_tsv(const std::vector<IdentitySet>& sets, const std::filesystem::path& path);

}  // namespace kgforge
