#include <gtest/gtest.h>

#include <fstream>

#include "fixtures.hpp"
#include "kgforge/error.hpp"
#include "kgforge/extract.hpp"
#include "kgforge/ntriples.hpp"
#include "kgforge/wikitext.hpp"

using namespace kgforge;
namespace ts = kgforge::testsupport;

namespace {

using Pairs = std::vector<std::pair<std::string, std::string>>;

Triple type_triple(const std::string& s, const std::string& cls) {
  return {Iri(s), Iri(std::string(vocab::kRdfType)), Iri(cls)};
}

}  // namespace

TEST(Infobox, SingleTemplate) {
  auto boxes = extract_infoboxes("{{Infobox character|name=Betty Riker|species=Human}}");
  ASSERT_EQ(boxes.size(), 1U);
  EXPECT_EQ(boxes[0].template_name, "Infobox character");
  EXPECT_EQ(boxes[0].pairs, (Pairs{{"name", "Betty Riker"}, {"species", "Human"}}));
}

TEST(Infobox, NoTemplates) {
  EXPECT_TRUE(extract_infoboxes("Plain text with [[a link]] and no templates.").empty());
  EXPECT_TRUE(extract_infoboxes("").empty());
}

TEST(Infobox, NestedTemplateFlattened) {
  auto boxes = extract_infoboxes("{{Infobox person|spouse={{plainlist|[[A]]}}}}");
  ASSERT_EQ(boxes.size(), 1U);
  EXPECT_EQ(boxes[0].pairs, (Pairs{{"spouse", "[[A]]"}}));
}

TEST(Infobox, IgnoresOtherTemplatesAndPositionalArgs) {
  auto boxes = extract_infoboxes("{{Quote|hello}}\n{{ infobox film | Foo | year = 1999 | link = [[X|y]] }}");
  ASSERT_EQ(boxes.size(), 1U);
  EXPECT_EQ(boxes[0].template_name, "infobox film");
  EXPECT_EQ(boxes[0].pairs, (Pairs{{"year", "1999"}, {"link", "[[X|y]]"}}));
}

TEST(Infobox, UnbalancedBracesWarnNotThrow) {
  InfoboxScan scan;
  ASSERT_NO_THROW(scan = scan_infoboxes("{{Infobox film|name=Broken|year=2001\n'''Broken''' is a film."));
  EXPECT_FALSE(scan.warnings.empty());
}

TEST(ValueToObject, LinkRules) {
  auto plain = value_to_object("[[Tom Cruise]]", "w");
  ASSERT_TRUE(plain && as_iri(*plain));
  EXPECT_EQ(as_iri(*plain)->str(), "http://kgforge.local/w/resource/Tom_Cruise");
  auto piped = value_to_object("  [[Tom Cruise|the actor]] ", "w");
  ASSERT_TRUE(piped);
  EXPECT_EQ(*piped, *plain);
}

TEST(ValueToObject, LiteralsAndSkip) {
  auto lit = value_to_object("1.70 m", "w");
  ASSERT_TRUE(lit && as_literal(*lit));
  EXPECT_EQ(as_literal(*lit)->lexical(), "1.70 m");
  EXPECT_FALSE(as_literal(*lit)->datatype());
  auto mixed = value_to_object("[[A]] and [[B|bee]]", "w");
  ASSERT_TRUE(mixed && as_literal(*mixed));
  EXPECT_EQ(as_literal(*mixed)->lexical(), "A and bee");
  EXPECT_FALSE(value_to_object("   ", "w"));
  EXPECT_FALSE(value_to_object("<!-- nothing -->", "w"));
}

TEST(PropertyKey, SynonymsAndCamelCase) {
  const auto syn = SynonymMap::defaults();
  EXPECT_EQ(normalize_property_key("birth_date", syn), "birthDate");
  EXPECT_EQ(normalize_property_key("dateofbirth", syn), "birthDate");
  EXPECT_EQ(normalize_property_key("eye colour", syn), "eyeColour");
  EXPECT_EQ(normalize_property_key("species", syn), "species");
}

TEST(PropertyKey, UserSynonymsExtendDefaults) {
  auto syn = SynonymMap::defaults();
  syn.merge(SynonymMap::parse("# comment\nhome world = homeworld\n"));
  EXPECT_EQ(normalize_property_key("Home_World", syn), "homeworld");
  EXPECT_EQ(normalize_property_key("birth date", syn), "birthDate");
}

TEST(ClassName, FromTemplate) {
  EXPECT_EQ(class_name_for_template("Infobox character"), "Character");
  EXPECT_EQ(class_name_for_template("infobox film"), "Film");
}

TEST(Extract, BettyRiker) {
  WikiDump dump{"w", {{"Betty Riker", "{{Infobox character|species=Human}}\n'''Betty Riker''' is a person.", false}}, {}};
  auto result = extract_wiki(dump);
  const auto& kg = result.graph;
  const std::string betty = "http://kgforge.local/w/resource/Betty_Riker";
  EXPECT_TRUE(kg.contains(type_triple(betty, "http://kgforge.local/w/class/Character")));
  EXPECT_TRUE(kg.contains({Iri(betty), Iri("http://kgforge.local/w/property/species"), Literal("Human")}));
  EXPECT_TRUE(kg.contains({Iri(betty), Iri(std::string(vocab::kRdfsLabel)), Literal("Betty Riker")}));
}

TEST(Extract, RedirectContributesNothing) {
  WikiDump dump{"w", {{"Number One", "#REDIRECT [[William Riker]]", true}}, {}};
  EXPECT_TRUE(extract_wiki(dump).graph.empty());
}

TEST(Extract, DeterministicAcrossWorkers) {
  ts::TempDir dir("extract");
  ts::write_synthetic_wikis(dir.path(), 1, 5);
  auto dump = read_wiki_dump(dir / "wiki0.xml");
  ExtractionSettings one;
  ExtractionSettings many;
  many.workers = 8;
  EXPECT_EQ(serialize_ntriples(extract_wiki(dump, one).graph), serialize_ntriples(extract_wiki(dump, many).graph));
}

TEST(Extract, GoldenThreePageFixture) {
  const auto dir = ts::data_dir() / "extract3";
  auto dump = read_wiki_dump(dir / "mini.xml");
  EXPECT_EQ(dump.wiki_id, "mini");
  auto result = extract_wiki(dump);
  EXPECT_EQ(serialize_ntriples(result.graph), ts::read_file(dir / "mini.nt"));
}

TEST(WikiDump, KeepsMainNamespaceAndFlagsRedirects) {
  const std::string xml =
      "<mediawiki><page><title>A</title><ns>0</ns><revision><text>one</text></revision>"
      "<revision><text>two</text></revision></page>"
      "<page><title>Talk:A</title><ns>1</ns><revision><text>talk</text></revision></page>"
      "<page><title>R</title><ns>0</ns><redirect title=\"A\"/><revision><text>#REDIRECT [[A]]</text></revision></page>"
      "</mediawiki>";
  auto dump = parse_wiki_dump(xml, "w");
  ASSERT_EQ(dump.pages.size(), 2U);
  EXPECT_EQ(dump.pages[0].title, "A");
  EXPECT_EQ(dump.pages[0].wikitext, "two");
  EXPECT_TRUE(dump.pages[1].is_redirect);
}

TEST(WikiDump, MalformedXmlReportsOffset) {
  const std::string xml = "<mediawiki><page><title>A</titel></page></mediawiki>";
  try {
    parse_wiki_dump(xml, "w");
    FAIL() << "expected an XML error";
  } catch (const XmlError& e) {
    EXPECT_GT(e.offset(), 0U);
    EXPECT_LE(e.offset(), xml.size());
  }
}

TEST(Metadata, ParsesKnownKeys) {
  auto m = parse_wiki_metadata("pages=100\nusers=7\nwam=55.2\n", "w");
  EXPECT_EQ(m.pages, 100U);
  EXPECT_EQ(m.users, 7U);
  ASSERT_TRUE(m.wam_score);
  EXPECT_DOUBLE_EQ(*m.wam_score, 55.2);
  EXPECT_FALSE(m.articles);
  EXPECT_FALSE(m.active_users);
}

TEST(Metadata, MissingWamIsAbsent) { EXPECT_FALSE(parse_wiki_metadata("pages=3\n", "w").wam_score); }

TEST(Metadata, RangeAndNumberErrors) {
  EXPECT_THROW(parse_wiki_metadata("wam=120\n", "w"), ValidationError);
  EXPECT_THROW(parse_wiki_metadata("wam=-1\n", "w"), ValidationError);
  EXPECT_THROW(parse_wiki_metadata("pages=-3\n", "w"), ValidationError);
  EXPECT_THROW(parse_wiki_metadata("users=many\n", "w"), ValidationError);
}

TEST(Metadata, LoadUsesFileStem) {
  ts::TempDir dir("meta");
  std::ofstream(dir / "trek.meta") << "articles=4\n";
  auto m = load_wiki_metadata(dir / "trek.meta");
  EXPECT_EQ(m.wiki_id, "trek");
  EXPECT_EQ(m.articles, 4U);
}
