#include "kgforge/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "kgforge/error.hpp"

namespace kgforge {

KnowledgeGraph::KnowledgeGraph(std::string id, std::vector<Triple> triples)
    : id_(std::move(id)), triples_(std::move(triples)) {
  std::sort(triples_.begin(), triples_.end());
  triples_.erase(std::unique(triples_.begin(), triples_.end()), triples_.end());
  if (triples_.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw CapacityError(triples_.size() * sizeof(Triple), "graph exceeds 2^32 triples");
  }
  predicate_order_.resize(triples_.size());
  std::iota(predicate_order_.begin(), predicate_order_.end(), 0U);
  std::stable_sort(predicate_order_.begin(), predicate_order_.end(), [this](std::uint32_t a, std::uint32_t b) {
    return triples_[a].predicate < triples_[b].predicate;
  });
}

std::span<const Triple> KnowledgeGraph::by_subject(const Iri& subject) const {
  auto lo = std::partition_point(triples_.begin(), triples_.end(),
                                 [&](const Triple& t) { return t.subject.str() < subject.str(); });
  auto hi = std::partition_point(lo, triples_.end(), [&](const Triple& t) { return t.subject == subject; });
  return {lo, hi};
}

std::vector<const Triple*> KnowledgeGraph::by_predicate(const Iri& predicate) const {
  auto lo = std::partition_point(predicate_order_.begin(), predicate_order_.end(),
                                 [&](std::uint32_t i) { return triples_[i].predicate < predicate; });
  std::vector<const Triple*> out;
  for (auto it = lo; it != predicate_order_.end() && triples_[*it].predicate == predicate; ++it) {
    out.push_back(&triples_[*it]);
  }
  return out;
}

bool KnowledgeGraph::contains(const Triple& t) const {
  return std::binary_search(triples_.begin(), triples_.end(), t);
}

std::vector<Iri> KnowledgeGraph::iris() const {
  std::vector<Iri> out;
  out.reserve(triples_.size() * 2);
  for (const auto& t : triples_) {
    out.push_back(t.subject);
    out.push_back(t.predicate);
    if (const Iri* o = as_iri(t.object)) out.push_back(*o);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

KnowledgeGraph KnowledgeGraph::with_id(std::string id) const {
  KnowledgeGraph copy = *this;
  copy.id_ = std::move(id);
  return copy;
}

}  // namespace kgforge
