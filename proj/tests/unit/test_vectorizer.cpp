#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nmf_forge/vectorizer.hpp"
#include "test_util.hpp"

using namespace nmf_forge;

namespace {

Corpus four_docs() { return make_corpus({{"1", "a b"}, {"2", "a c"}, {"3", "a d"}, {"4", "b c"}}); }

}  // namespace

TEST(Tokenize, Examples) {
  EXPECT_EQ(tokenize("The DNA evidence!"), (std::vector<std::string>{"the", "dna", "evidence"}));
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_EQ(tokenize("semi-supervised NMF"), (std::vector<std::string>{"semi", "supervised", "nmf"}));
  EXPECT_EQ(tokenize("snake_case 42x"), (std::vector<std::string>{"snake_case", "42x"}));
  EXPECT_EQ(tokenize("caf\xC3\xA9 au"), (std::vector<std::string>{"caf", "au"}));
}

TEST(Tokenize, JoinIsIdempotent) {
  std::mt19937 rng(3);
  const std::string alphabet = "aZ9_ -!.\t\n\xC3\xA9";
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    const auto len = rng() % 40;
    for (std::size_t i = 0; i < len; ++i) text.push_back(alphabet[rng() % alphabet.size()]);
    const auto tokens = tokenize(text);
    std::string joined;
    for (const auto& t : tokens) joined += (joined.empty() ? "" : " ") + t;
    EXPECT_EQ(tokenize(joined), tokens);
  }
}

TEST(BuildVocabulary, MinDf) {
  VectorizerParams p;
  p.min_df = 0.5;
  const auto v = build_vocabulary(four_docs(), p);
  EXPECT_EQ(v.terms(), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(v.doc_freq(0), 3u);
  EXPECT_EQ(v.doc_freq(1), 2u);
}

TEST(BuildVocabulary, MaxDf) {
  VectorizerParams p;
  p.min_df = 0.5;
  p.max_df = 0.7;
  EXPECT_EQ(build_vocabulary(four_docs(), p).terms(), (std::vector<std::string>{"b", "c"}));
}

TEST(BuildVocabulary, MaxFeaturesTieBreak) {
  VectorizerParams p;
  p.max_features = 2;
  const auto v = build_vocabulary(four_docs(), p);
  EXPECT_EQ(v.terms(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(v.corpus_freq(0), 3u);
}

TEST(BuildVocabulary, StopwordsAndErrors) {
  VectorizerParams p;
  p.stopwords = {"a"};
  p.extra_stopwords = {"d"};
  EXPECT_EQ(build_vocabulary(four_docs(), p).terms(), (std::vector<std::string>{"b", "c"}));
  p.extra_stopwords = {"b", "c", "d"};
  EXPECT_THROW(build_vocabulary(four_docs(), p), Error);

  VectorizerParams bad;
  bad.min_df = 0.8;
  bad.max_df = 0.5;
  EXPECT_THROW(build_vocabulary(four_docs(), bad), Error);
  bad = {};
  bad.max_df = 0.0;
  EXPECT_THROW(build_vocabulary(four_docs(), bad), Error);
}

TEST(BuildVocabulary, UnprunedKeepsEveryDistinctToken) {
  std::mt19937 rng(5);
  const std::vector<std::string> words = {"x", "y", "z", "w1", "w2", "q_q"};
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Document> docs;
    std::set<std::string> distinct;
    for (int d = 0; d < 1 + static_cast<int>(rng() % 6); ++d) {
      std::string text;
      for (int k = 0; k < static_cast<int>(rng() % 8); ++k) {
        const auto& w = words[rng() % words.size()];
        text += w + " ";
        distinct.insert(w);
      }
      docs.push_back({"d" + std::to_string(d), text});
    }
    if (distinct.empty()) continue;
    const auto v = build_vocabulary(make_corpus(docs), {});
    EXPECT_EQ(std::set<std::string>(v.terms().begin(), v.terms().end()), distinct);
    for (std::size_t i = 0; i < v.size(); ++i) {
      EXPECT_GE(v.doc_freq(i), 1u);
      EXPECT_LE(v.doc_freq(i), docs.size());
    }
  }
}

TEST(TfIdf, SingleTerm) {
  const auto c = make_corpus({{"d", "dna"}});
  const auto x = tfidf_matrix(c, build_vocabulary(c, {}));
  ASSERT_EQ(x.values.rows(), 1);
  EXPECT_DOUBLE_EQ(x.values(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(smoothed_idf(1, 1), 1.0);
}

TEST(TfIdf, TwoEqualTerms) {
  const auto c = make_corpus({{"d", "dna court"}});
  const auto x = tfidf_matrix(c, build_vocabulary(c, {}));
  EXPECT_EQ(x.vocab.terms(), (std::vector<std::string>{"court", "dna"}));
  EXPECT_NEAR(x.values(0, 0), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(x.values(1, 0), 0.70711, 1e-5);
}

TEST(TfIdf, HandComputedWeights) {
  // n = 2; "a" in both docs (idf 1), "b" in one (idf ln(3/2) + 1).
  const auto c = make_corpus({{"1", "a a b"}, {"2", "a"}});
  const auto x = tfidf_matrix(c, build_vocabulary(c, {}));
  const double wa = 2.0, wb = std::log(1.5) + 1.0;
  const double norm = std::sqrt(wa * wa + wb * wb);
  EXPECT_NEAR(x.values(0, 0), wa / norm, 1e-14);
  EXPECT_NEAR(x.values(1, 0), wb / norm, 1e-14);
  EXPECT_NEAR(x.values(0, 1), 1.0, 1e-14);
  EXPECT_EQ(x.values(1, 1), 0.0);
}

TEST(TfIdf, DocumentWithoutVocabularyIsZeroColumn) {
  const auto c = make_corpus({{"1", "dna"}, {"2", "the"}, {"3", ""}});
  VectorizerParams p;
  p.stopwords = {"the"};
  const auto x = tfidf_matrix(c, build_vocabulary(c, p));
  EXPECT_EQ(x.values.col(1).norm(), 0.0);
  EXPECT_EQ(x.values.col(2).norm(), 0.0);
  EXPECT_EQ(x.doc_ids, (std::vector<std::string>{"1", "2", "3"}));
}

TEST(TfIdf, ColumnsHaveUnitOrZeroNorm) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Document> docs;
    for (int d = 0; d < 6; ++d) {
      std::string text;
      for (int k = 0; k < static_cast<int>(rng() % 10); ++k) text += "w" + std::to_string(rng() % 7) + " ";
      docs.push_back({"d" + std::to_string(d), text});
    }
    docs.push_back({"z", "w0"});
    const auto c = make_corpus(docs);
    const auto x = tfidf_matrix(c, build_vocabulary(c, {}));
    EXPECT_GE(x.values.minCoeff(), 0.0);
    for (Index j = 0; j < x.values.cols(); ++j) {
      const double n = x.values.col(j).norm();
      EXPECT_TRUE(n == 0.0 || std::abs(n - 1.0) < 1e-12);
    }
  }
}

class HighlightTest : public ::testing::Test {
 protected:
  TermDocumentMatrix x;
  void SetUp() override {
    x.vocab = Vocabulary({"casing", "fingerprint", "shell", "trial"}, {1, 1, 1, 1}, {1, 1, 1, 1});
    x.values.resize(4, 2);
    x.values << 0.1, 0.4, 0.2, 0.0, 0.5, 0.3, 0.7, 0.6;
    x.doc_ids = {"a", "b"};
  }
};

TEST_F(HighlightTest, ScalesKeywordRow) {
  const auto h = highlight_keywords(x, {"fingerprint"}, 1.5);
  EXPECT_NEAR(h.matrix.values(1, 0), 0.3, 1e-15);
  EXPECT_EQ(h.matrix.values(1, 1), 0.0);
  EXPECT_EQ(h.scaled, (std::vector<std::string>{"fingerprint"}));
  for (Index i : {0, 2, 3}) EXPECT_EQ(h.matrix.values.row(i), x.values.row(i));
}

TEST_F(HighlightTest, FactorOneIsIdentity) {
  EXPECT_EQ(highlight_keywords(x, {"fingerprint", "trial"}, 1.0).matrix.values, x.values);
}

TEST_F(HighlightTest, PhrasesSplitIntoTokens) {
  const auto h = highlight_keywords(x, {"shell casing", "bite mark"}, 2.0);
  EXPECT_EQ(h.matrix.values.row(0), 2.0 * x.values.row(0));
  EXPECT_EQ(h.matrix.values.row(2), 2.0 * x.values.row(2));
  EXPECT_EQ(h.matrix.values.row(3), x.values.row(3));
  EXPECT_EQ(h.missing, (std::vector<std::string>{"bite", "mark"}));
  EXPECT_GE(h.matrix.values.minCoeff(), 0.0);
}

TEST_F(HighlightTest, RejectsNonPositiveFactor) {
  EXPECT_THROW(highlight_keywords(x, {"trial"}, 0.0), Error);
}

TEST(KeywordFile, CommaAndNewlineSeparated) {
  EXPECT_EQ(parse_keyword_list("eyewitness, shaken baby syndrome,toolmark\nsaliva\n\n"),
            (std::vector<std::string>{"eyewitness", "shaken baby syndrome", "toolmark", "saliva"}));
  TempDir dir;
  const auto p = dir.write("sw.txt", "The\n\nfoo \n");
  EXPECT_EQ(load_stopword_file(p), (std::set<std::string>{"foo", "the"}));
}

TEST(KeywordFile, BundledListParses) {
  const auto phrases = load_keyword_file(NMF_FORGE_SOURCE_DIR "/keywords/cip.txt");
  EXPECT_EQ(phrases.size(), 45u);
  EXPECT_EQ(phrases.front(), "eyewitness");
  EXPECT_EQ(phrases.back(), "blood type");
}
