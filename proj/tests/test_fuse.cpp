#include <gtest/gtest.h>

#include <random>
#include <set>

#include "kgforge/extract.hpp"
#include "kgforge/fuse.hpp"
#include "oracles.hpp"

using namespace kgforge;
namespace ts = kgforge::testsupport;

namespace {

const Namespace kNs;

Iri res(const std::string& wiki, const std::string& name) { return kNs.resource(wiki, name); }

std::vector<std::vector<std::string>> member_strings(const std::vector<IdentitySet>& sets) {
  std::vector<std::vector<std::string>> out;
  for (const auto& s : sets) {
    std::vector<std::string> m;
    for (const auto& iri : s.members) m.push_back(iri.str());
    out.push_back(m);
  }
  return out;
}

IdentitySet set_of(const std::vector<Iri>& members, EntityKind kind = EntityKind::Instance) {
  IdentitySet s;
  s.members = members;
  std::sort(s.members.begin(), s.members.end());
  s.kind = kind;
  return s;
}

}  // namespace

TEST(UnionFind, Basics) {
  UnionFind uf;
  auto a = uf.add(Iri("http://x/a"));
  auto b = uf.add(Iri("http://x/b"));
  auto c = uf.add(Iri("http://x/c"));
  EXPECT_EQ(uf.add(Iri("http://x/a")), a);
  uf.unite(a, b);
  EXPECT_EQ(uf.find(a), uf.find(b));
  EXPECT_NE(uf.find(a), uf.find(c));
  EXPECT_EQ(uf.size(), 3U);
}

TEST(Closure, Chain) {
  std::vector<Alignment> al{{{res("a", "x"), res("b", "x"), 1.0}}, {{res("b", "x"), res("c", "x"), 1.0}}};
  auto sets = transitive_closure(al);
  ASSERT_EQ(sets.size(), 1U);
  EXPECT_EQ(sets[0].members.size(), 3U);
  EXPECT_EQ(sets[0].kind, EntityKind::Instance);
}

TEST(Closure, TwoComponents) {
  std::vector<Alignment> al{{{res("a", "x"), res("b", "x"), 1.0}, {res("c", "y"), res("d", "y"), 1.0}}};
  EXPECT_EQ(transitive_closure(al).size(), 2U);
  EXPECT_TRUE(transitive_closure(std::vector<Alignment>{}).empty());
}

TEST(Closure, MixedKindsWarnAndTakeMajority) {
  std::vector<Alignment> al{{{res("a", "x"), res("b", "x"), 1.0}, {res("b", "x"), kNs.class_iri("c", "X"), 1.0}}};
  std::vector<std::string> warnings;
  auto sets = transitive_closure(al, kNs, &warnings);
  ASSERT_EQ(sets.size(), 1U);
  EXPECT_EQ(sets[0].kind, EntityKind::Instance);
  EXPECT_EQ(warnings.size(), 1U);
}

TEST(Closure, MatchesBfsOracle) {
  std::mt19937_64 rng(500);
  for (int round = 0; round < 10; ++round) {
    std::vector<Alignment> als(5);
    std::vector<std::pair<std::string, std::string>> edges;
    for (int e = 0; e < 500; ++e) {
      auto a = res("w", "e" + std::to_string(rng() % 700));
      auto b = res("w", "e" + std::to_string(rng() % 700));
      if (a == b) continue;
      als[rng() % als.size()].push_back({a, b, 1.0});
      edges.emplace_back(a.str(), b.str());
    }
    EXPECT_EQ(member_strings(transitive_closure(als)), ts::bfs_components(edges));
  }
}

TEST(Canonical, NewYorkScenario) {
  std::vector<IdentitySet> sets{
      set_of({res("w1", "Albany"), res("w2", "Albany"), res("w3", "New_York")}),
      set_of({res("w1", "New_York"), res("w2", "New_York"), res("w3", "Albany"), res("w4", "New_York")}),
      set_of({res("w5", "New_York"), res("w6", "New_York"), res("w7", "NYC")})};
  auto canon = canonical_uris(sets, {});
  EXPECT_EQ(sets[1].canonical->str(), "http://kgforge.local/fused/resource/New_York");
  EXPECT_EQ(sets[2].canonical->str(), "http://kgforge.local/fused/resource/New_York_1");
  EXPECT_EQ(sets[0].canonical->str(), "http://kgforge.local/fused/resource/Albany");
  EXPECT_EQ(canonical_of(canon, res("w7", "NYC")).str(), "http://kgforge.local/fused/resource/New_York_1");
}

TEST(Canonical, TieTakesSmallestFragment) {
  std::vector<IdentitySet> sets{set_of({res("w1", "B"), res("w2", "A")})};
  canonical_uris(sets, {});
  EXPECT_EQ(sets[0].canonical->fragment(), "A");
}

TEST(Canonical, UnmatchedKeepFragmentOtherUntouched) {
  std::vector<IdentitySet> sets{set_of({res("w1", "X"), res("w2", "X")})};
  const Iri lone = res("w1", "Lone");
  const Iri clash = res("w3", "X");
  const Iri label(std::string(vocab::kRdfsLabel));
  std::vector<Iri> all{lone, clash, label, kNs.property("w1", "height")};
  auto canon = canonical_uris(sets, all);
  EXPECT_EQ(canonical_of(canon, lone).str(), "http://kgforge.local/fused/resource/Lone");
  EXPECT_EQ(canonical_of(canon, clash).str(), "http://kgforge.local/fused/resource/X_1");
  EXPECT_EQ(canonical_of(canon, label), label);
  EXPECT_EQ(canonical_of(canon, kNs.property("w1", "height")).str(), "http://kgforge.local/fused/property/height");
}

TEST(Canonical, InjectiveOnRandomMultisets) {
  std::mt19937_64 rng(1000);
  const std::vector<std::string> frags{"A", "B", "C", "A_1", "New_York", "X"};
  for (int round = 0; round < 100; ++round) {
    std::vector<IdentitySet> sets;
    int counter = 0;
    const int n_sets = 1 + static_cast<int>(rng() % 8);
    for (int s = 0; s < n_sets; ++s) {
      std::vector<Iri> members;
      const int size = 2 + static_cast<int>(rng() % 4);
      for (int m = 0; m < size; ++m) members.push_back(res("w" + std::to_string(counter++), frags[rng() % frags.size()]));
      sets.push_back(set_of(members));
    }
    auto canon = canonical_uris(sets, {});
    std::set<std::string> seen;
    for (const auto& s : sets) {
      ASSERT_TRUE(s.canonical);
      EXPECT_TRUE(seen.insert(s.canonical->str()).second) << s.canonical->str();
      for (const auto& m : s.members) EXPECT_EQ(canonical_of(canon, m), *s.canonical);
    }
  }
}

TEST(Fuse, OneSetTwoGraphs) {
  const Iri p = kNs.property("w1", "species");
  KnowledgeGraph g1("w1", {{res("w1", "Betty"), p, Literal("Human")}});
  KnowledgeGraph g2("w2", {{res("w2", "Betty"), p, Literal("Human")}});
  std::vector<IdentitySet> sets{set_of({res("w1", "Betty"), res("w2", "Betty")})};
  std::vector<Iri> all{res("w1", "Betty"), res("w2", "Betty"), p};
  auto canon = canonical_uris(sets, all);
  std::vector<KnowledgeGraph> kgs{g1, g2};
  std::vector<WikiMetadata> meta{{"w1", 10, 5, 3, 1, 50.5}, {"w2", {}, {}, {}, {}, {}}};
  auto fused = fuse_kgs(kgs, canon, meta).graph;
  const Iri betty("http://kgforge.local/fused/resource/Betty");
  const Iri used_in = kNs.meta("usedIn");
  EXPECT_EQ(fused.by_subject(betty).size(), 3U);
  EXPECT_TRUE(fused.contains({betty, Iri("http://kgforge.local/fused/property/species"), Literal("Human")}));
  EXPECT_TRUE(fused.contains({betty, used_in, kNs.wiki_resource("w1")}));
  EXPECT_TRUE(fused.contains({betty, used_in, kNs.wiki_resource("w2")}));
  EXPECT_EQ(fused.by_subject(kNs.wiki_resource("w1")).size(), 6U);
  EXPECT_EQ(fused.by_subject(kNs.wiki_resource("w2")).size(), 1U);
  EXPECT_TRUE(fused.contains({kNs.wiki_resource("w1"), kNs.meta("wamScore"),
                              Literal("50.5", Iri(std::string(vocab::kXsdDouble)))}));
  EXPECT_EQ(fused.size(), 3U + 6U + 1U);
}

TEST(Fuse, MissingMetadataWarns) {
  KnowledgeGraph g("w1", {{res("w1", "A"), kNs.property("w1", "p"), Literal("v")}});
  std::vector<KnowledgeGraph> kgs{g};
  std::vector<IdentitySet> sets;
  auto all = g.iris();
  auto canon = canonical_uris(sets, all);
  auto result = fuse_kgs(kgs, canon, {});
  EXPECT_EQ(result.warnings.size(), 1U);
  EXPECT_EQ(result.graph.by_subject(kNs.wiki_resource("w1")).size(), 1U);
  EXPECT_EQ(result.graph.size(), 3U);
}

TEST(Fuse, ConflictingValuesRetained) {
  const Iri h = kNs.property("a", "height");
  KnowledgeGraph a("a", {{res("a", "C"), h, Literal("180cm")}});
  KnowledgeGraph b("b", {{res("b", "C"), kNs.property("b", "height"), Literal("1.8m")}});
  std::vector<IdentitySet> sets{set_of({res("a", "C"), res("b", "C")}),
                                set_of({h, kNs.property("b", "height")}, EntityKind::Property)};
  auto canon = canonical_uris(sets, {});
  std::vector<KnowledgeGraph> kgs{a, b};
  auto fused = fuse_kgs(kgs, canon, {}).graph;
  const Iri c("http://kgforge.local/fused/resource/C");
  const Iri fh("http://kgforge.local/fused/property/height");
  EXPECT_TRUE(fused.contains({c, fh, Literal("180cm")}));
  EXPECT_TRUE(fused.contains({c, fh, Literal("1.8m")}));
}

TEST(Fuse, WorkersDoNotChangeOutput) {
  std::vector<KnowledgeGraph> kgs;
  std::vector<Iri> all;
  for (int g = 0; g < 6; ++g) {
    std::vector<Triple> t;
    const auto w = "w" + std::to_string(g);
    for (int i = 0; i < 30; ++i) t.push_back({res(w, "E" + std::to_string(i % 7)), kNs.property(w, "p"), Literal(std::to_string(i))});
    kgs.emplace_back(w, t);
    for (const auto& iri : kgs.back().iris()) all.push_back(iri);
  }
  std::vector<IdentitySet> sets{set_of({res("w0", "E1"), res("w3", "E1")})};
  auto canon = canonical_uris(sets, all);
  EXPECT_EQ(fuse_kgs(kgs, canon, {}, kNs, 1).graph, fuse_kgs(kgs, canon, {}, kNs, 8).graph);
}

TEST(ClosureTsv, SortedLines) {
  std::vector<IdentitySet> sets{set_of({res("b", "Y"), res("a", "Y")})};
  canonical_uris(sets, {});
  EXPECT_EQ(to_closure_tsv(sets),
            "http://kgforge.local/fused/resource/Y\thttp://kgforge.local/a/resource/Y\n"
            "http://kgforge.local/fused/resource/Y\thttp://kgforge.local/b/resource/Y\n");
}
