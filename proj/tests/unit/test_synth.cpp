#include <gtest/gtest.h>

#include "nmf_forge/nmf.hpp"
#include "nmf_forge/synth.hpp"
#include "nmf_forge/vectorizer.hpp"
#include "oracles.hpp"

using namespace nmf_forge;

TEST(Generate, ZeroNoiseStaysInBlock) {
  PlantedSpec spec;
  spec.n_topics = 3;
  spec.docs_per_topic = 4;
  spec.words_per_doc = 25;
  spec.vocab_per_topic = 5;
  const auto s = generate(spec);
  ASSERT_EQ(s.corpus.size(), 12u);
  for (std::size_t j = 0; j < s.corpus.size(); ++j) {
    const auto tokens = tokenize(s.corpus.documents[j].text);
    EXPECT_EQ(tokens.size(), 25u);
    const std::string prefix = "t" + std::to_string(s.ground_truth[j]) + "w";
    for (const auto& t : tokens) EXPECT_TRUE(t.starts_with(prefix)) << t;
  }
}

TEST(Generate, DeterministicAndSeedSensitive) {
  PlantedSpec spec;
  spec.noise_rate = 0.2;
  spec.seed = 4;
  const auto a = generate(spec), b = generate(spec);
  ASSERT_EQ(a.corpus.size(), b.corpus.size());
  for (std::size_t j = 0; j < a.corpus.size(); ++j) EXPECT_EQ(a.corpus.documents[j].text, b.corpus.documents[j].text);
  spec.seed = 5;
  EXPECT_NE(generate(spec).corpus.documents[0].text, a.corpus.documents[0].text);
}

TEST(Generate, LabelsFollowClassMap) {
  PlantedSpec spec;
  spec.n_topics = 4;
  spec.docs_per_topic = 2;
  spec.labels = std::vector<int>{0, 0, 1, 1};
  const auto s = generate(spec);
  EXPECT_EQ(s.labels.classes, (std::vector<std::string>{"class0", "class1"}));
  for (std::size_t j = 0; j < s.corpus.size(); ++j)
    EXPECT_EQ(*s.labels.labels_of(s.corpus.documents[j].id).begin(),
              static_cast<std::size_t>(s.ground_truth[j] / 2));
}

TEST(Generate, InvalidSpecs) {
  PlantedSpec spec;
  spec.noise_rate = 0.5;
  EXPECT_THROW(generate(spec), Error);
  spec = {};
  spec.hierarchy = std::vector<int>{0};
  EXPECT_THROW(generate(spec), Error);
  spec = {};
  spec.hierarchy = std::vector<int>{0, 0};
  spec.noise_rate = 0.3;
  spec.sibling_rate = 0.3;
  EXPECT_THROW(generate(spec), Error);
}

TEST(Generate, TwoTopicClusteringAccuracy) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    PlantedSpec spec;
    spec.n_topics = 2;
    spec.docs_per_topic = 10;
    spec.words_per_doc = 50;
    spec.noise_rate = 0.1;
    spec.seed = seed;
    const auto s = generate(spec);
    const auto x = tfidf_matrix(s.corpus, build_vocabulary(s.corpus, {}));
    SolverOptions o;
    o.rank = 2;
    o.seed = seed;
    const auto f = nmf(x, o);
    EXPECT_GE(oracle::permutation_accuracy(assign_documents(f.H).topics, s.ground_truth, 2), 0.9);
  }
}
