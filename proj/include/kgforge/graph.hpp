#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kgforge/rdf.hpp"

namespace kgforge {

/// Immutable, duplicate-free set of triples.
///
/// Triples are held sorted in serialization order, which doubles as the
/// subject index (all triples of one subject are contiguous). A second
/// permutation orders them by predicate.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;
  KnowledgeGraph(std::string id, std::vector<Triple> triples);

  const std::string& id() const noexcept { return id_; }
  std::span<const Triple> triples() const noexcept { return triples_; }
  std::size_t size() const noexcept { return triples_.size(); }
  bool empty() const noexcept { return triples_.empty(); }

  std::span<const Triple> by_subject(const Iri& subject) const;
  std::vector<const Triple*> by_predicate(const Iri& predicate) const;
  bool contains(const Triple& t) const;

  /// Every distinct IRI in any position, sorted.
  std::vector<Iri> iris() const;

  KnowledgeGraph with_id(std::string id) const;

  /// Structural equality on the triple set; ids are ignored.
  friend bool operator==(const KnowledgeGraph& a, const KnowledgeGraph& b) { return a.triples_ == b.triples_; }

 private:
  std::string id_;
  std::vector<Triple> triples_;
  std::vector<std::uint32_t> predicate_order_;
};

}  // namespace kgforge
