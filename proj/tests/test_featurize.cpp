#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "fixtures.hpp"
#include "kgforge/text.hpp"
#include "kgforge/tfidf.hpp"
#include "kgforge/tokenize.hpp"
#include "kgforge/vocab.hpp"

using namespace kgforge;
namespace ts = kgforge::testsupport;

using Tokens = std::vector<std::string>;

TEST(Porter, MatchesReferenceVocabulary) {
  std::istringstream in(ts::read_file(ts::data_dir() / "porter_vocab.tsv"));
  std::string line;
  std::size_t checked = 0;
  while (std::getline(in, line)) {
    auto tab = line.find('\t');
    ASSERT_NE(tab, std::string::npos) << line;
    const auto word = line.substr(0, tab);
    EXPECT_EQ(porter_stem(word), line.substr(tab + 1)) << word;
    ++checked;
  }
  EXPECT_GT(checked, 1000U);
}

TEST(Porter, NonAlphabeticWordsUnchanged) {
  EXPECT_EQ(porter_stem("r2d2"), "r2d2");
  EXPECT_EQ(porter_stem(""), "");
}

TEST(Tokenize, UnderscoreAndCamelCase) {
  EXPECT_EQ(tokenize("Betty_Riker"), (Tokens{"betti", "riker"}));
  EXPECT_EQ(tokenize("birthDate"), (Tokens{"birth", "date"}));
}

TEST(Tokenize, StopwordsAndStemming) {
  EXPECT_EQ(tokenize("The running of the dogs"), (Tokens{"run", "dog"}));
  EXPECT_TRUE(tokenize("the of and").empty());
}

TEST(Tokenize, CustomStopwords) {
  auto stop = StopwordList::parse("# none but\nriker\n");
  Tokenizer tok(stop);
  EXPECT_EQ(tok("The Riker"), (Tokens{"the"}));
}

TEST(KgDocument, StringLiteralsOnly) {
  const Iri s("http://x/s");
  const Iri p("http://x/p");
  KnowledgeGraph one("g", {{s, p, Literal("Betty Riker")}});
  EXPECT_EQ(kg_document(one), tokenize("Betty Riker"));
  KnowledgeGraph iris("g", {{s, p, Iri("http://x/Betty_Riker")}});
  EXPECT_TRUE(kg_document(iris).empty());
  KnowledgeGraph runs("g", {{s, p, Literal("run")}, {s, Iri("http://x/q"), Literal("running")}});
  EXPECT_EQ(kg_document(runs), (Tokens{"run", "run"}));
  KnowledgeGraph typed("g", {{s, p, Literal("42", Iri(std::string(vocab::kXsdInteger)))},
                             {s, Iri("http://x/q"), Literal("dogs", Iri(std::string(vocab::kXsdString)))}});
  EXPECT_EQ(kg_document(typed), (Tokens{"dog"}));
}

TEST(TfIdf, HandComputedWeights) {
  std::vector<TokenStream> docs{{"a", "b"}, {"b"}};
  auto model = tfidf_vectors(docs);
  ASSERT_EQ(model.vectors.size(), 2U);
  const int a = model.terms.find("a");
  ASSERT_GE(a, 0);
  EXPECT_EQ(model.vectors[0].nonzeros(), 1);
  EXPECT_DOUBLE_EQ(model.vectors[0].weights.coeff(a), std::log(2.0));
  EXPECT_EQ(model.vectors[1].nonzeros(), 0);
}

TEST(TfIdf, RawCountsScaleWeights) {
  std::vector<TokenStream> docs{{"a", "a", "a"}, {"b"}, {"b"}};
  auto model = tfidf_vectors(docs);
  EXPECT_DOUBLE_EQ(model.vectors[0].weights.coeff(model.terms.find("a")), 3.0 * std::log(3.0));
  EXPECT_DOUBLE_EQ(model.vectors[1].weights.coeff(model.terms.find("b")), std::log(1.5));
}

TEST(TfIdf, SingleDocumentAndIdenticalDocs) {
  std::vector<TokenStream> single{{"x", "y"}};
  EXPECT_EQ(tfidf_vectors(single).vectors[0].nonzeros(), 0);
  std::vector<TokenStream> same{{"x", "y"}, {"x", "y"}, {"z"}};
  auto model = tfidf_vectors(same);
  EXPECT_EQ(model.vectors[0].weights.nonZeros(), model.vectors[1].weights.nonZeros());
  EXPECT_DOUBLE_EQ(model.vectors[0].squared_norm, model.vectors[1].squared_norm);
  EXPECT_EQ(cosine_distance(model.vectors[0], model.vectors[1]), 0.0);
}

TEST(Cosine, IdentityOrthogonalityZero) {
  std::vector<TokenStream> docs{{"a", "b"}, {"c"}, {"a", "b"}, {"d"}};
  auto model = tfidf_vectors(docs);
  const auto& v = model.vectors;
  EXPECT_EQ(cosine_distance(v[0], v[0]), 0.0);
  EXPECT_EQ(cosine_distance(v[0], v[1]), 1.0);
  TfIdfVector<double> zero;
  EXPECT_EQ(cosine_distance(zero, v[0]), 1.0);
  EXPECT_EQ(cosine_distance(v[0], zero), 1.0);
  EXPECT_EQ(cosine_distance(zero, zero), 1.0);
}

TEST(Cosine, RangeAndSymmetryOnRandomCorpus) {
  auto docs = ts::synthetic_token_docs(60, 3);
  auto model = tfidf_vectors(docs);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    for (std::size_t j = 0; j < docs.size(); ++j) {
      const double d = cosine_distance(model.vectors[i], model.vectors[j]);
      EXPECT_GE(d, 0.0);
      EXPECT_LE(d, 1.0);
      EXPECT_EQ(d, cosine_distance(model.vectors[j], model.vectors[i]));
    }
  }
}

TEST(VectorFiles, RoundTripExactly) {
  ts::TempDir dir("vec");
  auto docs = ts::synthetic_token_docs(10, 9);
  auto model = tfidf_vectors(docs);
  write_term_dictionary(model.terms, dir / "terms.dict");
  auto terms = read_term_dictionary(dir / "terms.dict");
  ASSERT_EQ(terms.size(), model.terms.size());
  for (int i = 0; i < terms.size(); ++i) EXPECT_EQ(terms.term(i), model.terms.term(i));
  for (std::size_t d = 0; d < model.vectors.size(); ++d) {
    const auto path = dir / ("d" + std::to_string(d) + ".vec");
    write_vector_file(model.vectors[d], path);
    auto back = read_vector_file(path, terms.size());
    ASSERT_EQ(back.nonzeros(), model.vectors[d].nonzeros());
    for (Eigen::SparseVector<double>::InnerIterator it(model.vectors[d].weights); it; ++it) {
      EXPECT_EQ(back.weights.coeff(it.index()), it.value());
    }
    EXPECT_EQ(back.squared_norm, model.vectors[d].squared_norm);
  }
}

TEST(Text, IriSegmentAndLabels) {
  EXPECT_EQ(text::iri_segment("New York"), "New_York");
  EXPECT_EQ(text::percent_decode(text::iri_segment("A<b>")), "A<b>");
  EXPECT_EQ(text::normalize_label("Tom_Cruise"), "tom cruise");
  EXPECT_EQ(text::format_double(0.1), "0.1");
}
