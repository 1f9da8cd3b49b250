#include <gtest/gtest.h>

#include <cmath>

#include "kgforge/analyze.hpp"
#include "kgforge/extract.hpp"

using namespace kgforge;

namespace {

const Namespace kNs;
const Iri kLabel{std::string(vocab::kRdfsLabel)};
const Iri kType{std::string(vocab::kRdfType)};

Iri res(const std::string& wiki, const std::string& name) { return kNs.resource(wiki, name); }

IdentitySet sized(const std::string& tag, std::size_t n, EntityKind kind = EntityKind::Instance) {
  IdentitySet s;
  for (std::size_t i = 0; i < n; ++i) s.members.push_back(kNs.in_kind(kind, "w" + std::to_string(i), tag));
  s.kind = kind;
  return s;
}

Correspondence corr(const std::string& s, const std::string& t) { return {Iri("http://x/" + s), Iri("http://y/" + t), 1.0}; }

}  // namespace

TEST(ClosureStats, TwoSets) {
  std::vector<IdentitySet> sets{sized("A", 2), sized("B", 3)};
  auto stats = closure_stats(sets);
  ASSERT_EQ(stats.rows.size(), 1U);
  const auto& r = stats.rows[0];
  EXPECT_EQ(r.kind, EntityKind::Instance);
  EXPECT_EQ(r.sets, 2U);
  EXPECT_EQ(r.min_size, 2U);
  EXPECT_EQ(r.max_size, 3U);
  EXPECT_DOUBLE_EQ(r.mean_size, 2.5);
  EXPECT_DOUBLE_EQ(r.stddev_size, 0.5);
  EXPECT_EQ(stats.omitted, (std::vector<EntityKind>{EntityKind::Class, EntityKind::Property, EntityKind::Other}));
}

TEST(ClosureStats, SingleSetAndEmpty) {
  std::vector<IdentitySet> sets{sized("A", 5, EntityKind::Class)};
  auto stats = closure_stats(sets);
  ASSERT_EQ(stats.rows.size(), 1U);
  EXPECT_EQ(stats.rows[0].min_size, 5U);
  EXPECT_EQ(stats.rows[0].max_size, 5U);
  EXPECT_DOUBLE_EQ(stats.rows[0].mean_size, 5.0);
  EXPECT_DOUBLE_EQ(stats.rows[0].stddev_size, 0.0);
  EXPECT_TRUE(closure_stats(std::vector<IdentitySet>{}).rows.empty());
  auto tsv = to_tsv(closure_stats(std::vector<IdentitySet>{}));
  EXPECT_EQ(tsv.substr(0, tsv.find('\n')), "kind\tsets\tmin\tmax\tmean\tstddev");
}

TEST(SameLabel, HandCount) {
  KnowledgeGraph g("g", {{Iri("http://x/a"), kLabel, Literal("Tom Cruise")},
                         {Iri("http://y/a"), kLabel, Literal("tom_cruise")},
                         {Iri("http://x/b"), kLabel, Literal("Patrick Stewart")},
                         {Iri("http://y/b"), kLabel, Literal("Sir Patrick")}});
  LabelIndex labels(g);
  std::vector<Alignment> two{{corr("a", "a"), corr("b", "b")}};
  EXPECT_DOUBLE_EQ(same_label_fraction(two, labels), 0.5);
  std::vector<Alignment> equal{{corr("a", "a")}};
  EXPECT_DOUBLE_EQ(same_label_fraction(equal, labels), 0.0);
  EXPECT_DOUBLE_EQ(same_label_fraction(std::vector<Alignment>{}, labels), 0.0);
}

TEST(TopMatched, LargestFirstWithMajorityLabel) {
  std::vector<IdentitySet> sets{sized("Small", 2), sized("Big", 4), sized("Mid", 3)};
  LabelIndex labels;
  auto top = top_matched(sets, 2, EntityKind::Instance, labels);
  EXPECT_EQ(top, (std::vector<MatchedEntry>{{"big", 4}, {"mid", 3}}));
  EXPECT_EQ(top_matched(sets, 10, EntityKind::Instance, labels).size(), 3U);
  EXPECT_TRUE(top_matched(sets, 10, EntityKind::Class, labels).empty());
}

TEST(TopMatched, MajorityLabelWithinSet) {
  IdentitySet s;
  s.kind = EntityKind::Instance;
  s.members = {res("a", "New_York"), res("b", "New_York"), res("c", "NYC")};
  std::vector<IdentitySet> sets{s};
  auto top = top_matched(sets, 1, EntityKind::Instance, LabelIndex());
  EXPECT_EQ(top, (std::vector<MatchedEntry>{{"new york", 3}}));
}

TEST(TopMatched, ServicePagesExcluded) {
  std::vector<IdentitySet> sets{sized("Main_Page", 6), sized("Earth", 2)};
  auto top = top_matched(sets, 5, EntityKind::Instance, LabelIndex());
  EXPECT_EQ(top, (std::vector<MatchedEntry>{{"earth", 2}}));
}

TEST(Evaluate, HandArithmetic) {
  Alignment reference{corr("a", "a"), corr("b", "b"), corr("c", "c"), corr("d", "d")};
  Alignment system{corr("a", "a"), {Iri("http://y/b"), Iri("http://x/b"), 0.3}, corr("e", "e")};
  auto r = evaluate_alignment(system, reference);
  EXPECT_EQ(r.overall.correct, 2U);
  EXPECT_NEAR(r.overall.precision, 2.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(r.overall.recall, 0.5);
  EXPECT_NEAR(r.overall.f1, 4.0 / 7.0, 1e-12);
}

TEST(Evaluate, IdentityAndEmpty) {
  Alignment reference{corr("a", "a"), corr("b", "b")};
  auto same = evaluate_alignment(reference, reference);
  EXPECT_EQ(same.overall.precision, 1.0);
  EXPECT_EQ(same.overall.recall, 1.0);
  EXPECT_EQ(same.overall.f1, 1.0);
  auto empty = evaluate_alignment({}, reference);
  EXPECT_EQ(empty.overall.precision, 0.0);
  EXPECT_EQ(empty.overall.recall, 0.0);
  EXPECT_EQ(empty.overall.f1, 0.0);
}

TEST(Evaluate, PerKindRows) {
  Alignment reference{{res("a", "X"), res("b", "X"), 1.0}, {kNs.class_iri("a", "C"), kNs.class_iri("b", "C"), 1.0}};
  Alignment system{{res("a", "X"), res("b", "X"), 1.0}};
  auto r = evaluate_alignment(system, reference);
  ASSERT_EQ(r.rows.size(), 2U);
  EXPECT_EQ(r.rows[0].kind, EntityKind::Instance);
  EXPECT_EQ(r.rows[0].f1, 1.0);
  EXPECT_EQ(r.rows[1].kind, EntityKind::Class);
  EXPECT_EQ(r.rows[1].recall, 0.0);
}

TEST(Profile, EmptyAndMarkerlessClass) {
  EXPECT_EQ(kg_profile(KnowledgeGraph()), KgProfile{});
  KnowledgeGraph g("g", {{res("w", "A"), kType, kNs.class_iri("w", "Thing")}});
  auto p = kg_profile(g);
  EXPECT_EQ(p.classes, 1U);
  EXPECT_EQ(p.infobox_classes, 0U);
  EXPECT_EQ(p.instances, 1U);
  EXPECT_EQ(p.assertions, 1U);
}

TEST(Profile, CountsExtractedPage) {
  WikiDump dump{"w", {{"Betty Riker", "{{Infobox character|species=Human|father=[[Will]]}}\nBetty.", false}}, {}};
  auto p = kg_profile(extract_wiki(dump).graph);
  EXPECT_EQ(p.instances, 2U);
  EXPECT_EQ(p.classes, 1U);
  EXPECT_EQ(p.infobox_classes, 1U);
  EXPECT_EQ(p.properties, 2U);
  EXPECT_EQ(p.assertions, 3U);
}

TEST(Distribution, SharesSumToOne) {
  const Iri used_in = kNs.meta("usedIn");
  std::vector<Triple> t;
  for (int i = 0; i < 6; ++i) {
    auto r = res("fused", "E" + std::to_string(i));
    t.push_back({r, kType, kNs.class_iri("fused", i < 4 ? "Character" : "Planet")});
    t.push_back({r, used_in, kNs.wiki_resource(i % 2 ? "w1" : "w2")});
  }
  t.push_back({kNs.wiki_resource("w1"), kNs.meta("wikiId"), Literal("w1")});
  KnowledgeGraph g("g", t);
  auto doc = class_distribution(g, 0.0);
  EXPECT_EQ(doc["value"], 6);
  double share = 0;
  for (const auto& c : doc["children"]) share += c["share"].get<double>();
  EXPECT_NEAR(share, 1.0, 1e-12);
  ASSERT_EQ(doc["children"].size(), 2U);
  EXPECT_EQ(doc["children"][0]["name"], "Character");
  EXPECT_EQ(doc["children"][0]["value"], 4);
  auto folded = class_distribution(g, 1e9);
  ASSERT_EQ(folded["children"].size(), 1U);
  EXPECT_EQ(folded["children"][0]["name"], "other");
  EXPECT_EQ(folded["children"][0]["value"], 6);
}

TEST(Distribution, NoTypesIsEmpty) {
  KnowledgeGraph g("g", {{res("w", "A"), kLabel, Literal("A")}});
  auto doc = class_distribution(g, 0.0);
  EXPECT_EQ(doc["value"], 0);
  EXPECT_TRUE(doc["children"].empty());
}
