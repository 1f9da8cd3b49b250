#include "kgforge/fuse.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "kgforge/fs.hpp"
#include "kgforge/parallel.hpp"
#include "kgforge/text.hpp"

namespace kgforge {

std::size_t UnionFind::add(const Iri& iri) {
  auto [it, inserted] = index_.try_emplace(iri.str(), iris_.size());
  if (inserted) {
    iris_.push_back(iri);
    parent_.push_back(it->second);
    rank_.push_back(0);
  }
  return it->second;
}

std::size_t UnionFind::find(std::size_t x) {
  std::size_t root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) {
    auto next = parent_[x];
    parent_[x] = root;
    x = next;
  }
  return root;
}

void UnionFind::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
}

std::vector<IdentitySet> transitive_closure(std::span<const Alignment> alignments, const Namespace& ns,
                                            std::vector<std::string>* warnings) {
  UnionFind uf;
  for (const auto& al : alignments) {
    for (const auto& c : al) uf.unite(uf.add(c.source), uf.add(c.target));
  }
  std::unordered_map<std::size_t, std::vector<Iri>> groups;
  for (std::size_t x = 0; x < uf.size(); ++x) groups[uf.find(x)].push_back(uf.iri(x));

  std::vector<IdentitySet> sets;
  for (auto& [root, members] : groups) {
    if (members.size() < 2) continue;
    std::sort(members.begin(), members.end());
    std::array<std::size_t, 4> counts{};
    for (const auto& m : members) ++counts[static_cast<std::size_t>(ns.kind_of(m))];
    auto majority = static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
    IdentitySet set{std::move(members), static_cast<EntityKind>(majority), std::nullopt};
    if (counts[majority] != set.members.size() && warnings) {
      warnings->push_back("identity set of " + set.members.front().str() + " mixes entity kinds; using " +
                          std::string(to_string(set.kind)));
    }
    sets.push_back(std::move(set));
  }
  std::sort(sets.begin(), sets.end(),
            [](const IdentitySet& x, const IdentitySet& y) { return x.members.front() < y.members.front(); });
  return sets;
}

namespace {

class NameClaims {
 public:
  explicit NameClaims(const Namespace& ns) : ns_(ns) {}

  Iri claim(EntityKind kind, std::string_view fragment) {
    std::string base(fragment.empty() ? std::string_view("unnamed") : fragment);
    Iri candidate = mint(kind, base);
    for (std::size_t k = 1; taken_.contains(candidate.str()); ++k) candidate = mint(kind, base + "_" + std::to_string(k));
    taken_.insert(candidate.str());
    return candidate;
  }

 private:
  Iri mint(EntityKind kind, const std::string& name) const {
    if (kind == EntityKind::Other) return Iri(ns_.base() + "/fused/other/" + name);
    return ns_.in_kind(kind, "fused", name);
  }

  const Namespace& ns_;
  std::set<std::string> taken_;
};

}  // namespace

CanonicalMap canonical_uris(std::vector<IdentitySet>& sets, std::span<const Iri> all_iris, const Namespace& ns) {
  std::vector<std::size_t> order(sets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const auto& a = sets[x].members;
    const auto& b = sets[y].members;
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });

  NameClaims claims(ns);
  CanonicalMap canon;
  for (auto idx : order) {
    auto& set = sets[idx];
    std::map<std::string_view, std::size_t> freq;
    for (const auto& m : set.members) ++freq[m.fragment()];
    auto best = freq.begin();
    for (auto it = freq.begin(); it != freq.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    set.canonical = claims.claim(set.kind, best->first);
    for (const auto& m : set.members) canon.insert_or_assign(m.str(), *set.canonical);
  }

  std::vector<const Iri*> rest;
  for (const auto& iri : all_iris) {
    if (ns.kind_of(iri) != EntityKind::Other && !canon.contains(iri.str())) rest.push_back(&iri);
  }
  std::sort(rest.begin(), rest.end(), [](const Iri* a, const Iri* b) { return *a < *b; });
  rest.erase(std::unique(rest.begin(), rest.end(), [](const Iri* a, const Iri* b) { return *a == *b; }), rest.end());
  for (const Iri* iri : rest) canon.emplace(iri->str(), claims.claim(ns.kind_of(*iri), iri->fragment()));
  return canon;
}

const Iri& canonical_of(const CanonicalMap& canon, const Iri& iri) {
  auto it = canon.find(iri.str());
  return it == canon.end() ? iri : it->second;
}

FusionResult fuse_kgs(std::span<const KnowledgeGraph> kgs, const CanonicalMap& canon,
                      std::span<const WikiMetadata> metadata, const Namespace& ns, unsigned workers) {
  FusionResult result;
  const Iri used_in = ns.meta(meta_terms::kUsedIn);
  std::vector<std::vector<Triple>> parts(kgs.size());
  parallel_for_each_index(kgs.size(), workers, [&](std::size_t g) {
    const auto& kg = kgs[g];
    const Iri wiki = ns.wiki_resource(kg.id());
    auto& out = parts[g];
    out.reserve(kg.size());
    const Iri* last_subject = nullptr;
    for (const auto& t : kg.triples()) {
      Object o = t.object;
      if (const Iri* oi = as_iri(t.object)) o = canonical_of(canon, *oi);
      const Iri& s = canonical_of(canon, t.subject);
      out.push_back({s, canonical_of(canon, t.predicate), std::move(o)});
      if ((!last_subject || !(*last_subject == t.subject)) && ns.kind_of(t.subject) == EntityKind::Instance) {
        out.push_back({s, used_in, wiki});
      }
      last_subject = &t.subject;
    }
  });

  std::vector<Triple> triples;
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  triples.reserve(total + kgs.size() * 7);
  for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(triples));

  std::map<std::string, const WikiMetadata*> meta_by_id;
  for (const auto& m : metadata) meta_by_id[m.wiki_id] = &m;
  const Iri xsd_integer(std::string(vocab::kXsdInteger));
  const Iri xsd_double(std::string(vocab::kXsdDouble));
  for (const auto& kg : kgs) {
    const Iri wiki = ns.wiki_resource(kg.id());
    triples.push_back({wiki, ns.meta(meta_terms::kWikiId), Literal(kg.id())});
    auto it = meta_by_id.find(kg.id());
    if (it == meta_by_id.end()) {
      result.warnings.push_back("no metadata for wiki " + kg.id());
      continue;
    }
    const WikiMetadata& m = *it->second;
    auto count = [&](std::string_view term, const std::optional<std::uint64_t>& v) {
      if (v) triples.push_back({wiki, ns.meta(term), Literal(std::to_string(*v), xsd_integer)});
    };
    count(meta_terms::kNumPages, m.pages);
    count(meta_terms::kNumArticles, m.articles);
    count(meta_terms::kNumUsers, m.users);
    count(meta_terms::kNumActiveUsers, m.active_users);
    if (m.wam_score) {
      triples.push_back({wiki, ns.meta(meta_terms::kWamScore), Literal(text::format_double(*m.wam_score), xsd_double)});
    }
  }
  result.graph = KnowledgeGraph("fused", std::move(triples));
  return result;
}

std::string to_closure_tsv(const std::vector<IdentitySet>& sets) {
  std::vector<std::pair<std::string_view, std::string_view>> rows;
  for (const auto& s : sets) {
    if (!s.canonical) continue;
    for (const auto& m : s.members) rows.emplace_back(s.canonical->str(), m.str());
  }
  std::sort(rows.begin(), rows.end());
  std::string out;
  for (const auto& [c, m] : rows) {
    out += c;
    out += '\t';
    out += m;
    out += '\n';
  }
  return out;
}

void write_closure_tsv(const std::vector<IdentitySet>& sets, const std::filesystem::path& path) {
  fs::write_text_atomically(path, to_closure_tsv(sets));
}

}  // namespace kgforge
