#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "nmf_forge/corpus.hpp"
#include "nmf_forge/error.hpp"
#include "nmf_forge/matrix.hpp"

namespace nmf_forge {

// Planted-topic corpus description. Topic t owns the disjoint term block
// t<t>w<j>, j < vocab_per_topic.
struct PlantedSpec {
  int n_topics = 2;
  int docs_per_topic = 10;
  int words_per_doc = 50;
  int vocab_per_topic = 20;
  double noise_rate = 0.0;  // token replaced by a uniform token of another topic
  // Sub-topic -> super-topic. When set, a token is drawn from a sibling
  // sub-topic's block (same super-topic) with probability sibling_rate.
  std::optional<std::vector<int>> hierarchy;
  double sibling_rate = 0.3;
  // Topic -> class index; defaults to one class per topic.
  std::optional<std::vector<int>> labels;
  std::uint64_t seed = 0;

  void validate() const {
    if (n_topics < 1 || docs_per_topic < 1 || words_per_doc < 1 || vocab_per_topic < 1)
      throw Error("planted spec sizes must be positive");
    if (!(noise_rate >= 0.0 && noise_rate < 0.5)) throw Error("noise_rate must lie in [0, 0.5)");
    if (noise_rate > 0.0 && n_topics < 2) throw Error("noise needs at least two topics");
    if (hierarchy) {
      if (hierarchy->size() != static_cast<std::size_t>(n_topics))
        throw Error("hierarchy must map every topic");
      for (int s : *hierarchy)
        if (s < 0) throw Error("hierarchy entries must be non-negative");
      if (!(sibling_rate >= 0.0 && sibling_rate < 0.5))
        throw Error("sibling_rate must lie in [0, 0.5)");
      if (noise_rate + sibling_rate >= 0.5)
        throw Error("noise_rate + sibling_rate must stay below 0.5");
    }
    if (labels) {
      if (labels->size() != static_cast<std::size_t>(n_topics))
        throw Error("labels must map every topic");
      for (int c : *labels)
        if (c < 0) throw Error("class indices must be non-negative");
    }
  }
};

struct SyntheticCorpus {
  Corpus corpus;
  LabelSet labels;
  std::vector<int> ground_truth;  // topic of each document, in corpus order
};

inline std::string planted_term(int topic, int word) {
  return "t" + std::to_string(topic) + "w" + std::to_string(word);
}

// Document k has topic k mod n_topics.
inline SyntheticCorpus generate(const PlantedSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> word_in_block(0, spec.vocab_per_topic - 1);

  const int n_docs = spec.n_topics * spec.docs_per_topic;
  const int width = static_cast<int>(std::to_string(n_docs - 1).size());

  std::vector<std::vector<int>> siblings(static_cast<std::size_t>(spec.n_topics));
  if (spec.hierarchy) {
    for (int a = 0; a < spec.n_topics; ++a)
      for (int b = 0; b < spec.n_topics; ++b)
        if (a != b && (*spec.hierarchy)[static_cast<std::size_t>(a)] ==
                          (*spec.hierarchy)[static_cast<std::size_t>(b)])
          siblings[static_cast<std::size_t>(a)].push_back(b);
  }

  std::vector<int> class_of(static_cast<std::size_t>(spec.n_topics));
  for (int t = 0; t < spec.n_topics; ++t)
    class_of[static_cast<std::size_t>(t)] = spec.labels ? (*spec.labels)[static_cast<std::size_t>(t)] : t;
  const int n_classes = *std::max_element(class_of.begin(), class_of.end()) + 1;

  SyntheticCorpus out;
  out.labels.classes.reserve(static_cast<std::size_t>(n_classes));
  const int cwidth = static_cast<int>(std::to_string(n_classes - 1).size());
  for (int c = 0; c < n_classes; ++c) {
    std::string digits = std::to_string(c);
    out.labels.classes.push_back("class" + std::string(static_cast<std::size_t>(cwidth) - digits.size(), '0') + digits);
  }

  std::vector<Document> docs;
  for (int k = 0; k < n_docs; ++k) {
    const int topic = k % spec.n_topics;
    std::string text;
    for (int w = 0; w < spec.words_per_doc; ++w) {
      int source = topic;
      const double u = coin(rng);
      const auto& sib = siblings[static_cast<std::size_t>(topic)];
      if (u < spec.noise_rate) {
        std::uniform_int_distribution<int> other(0, spec.n_topics - 2);
        source = other(rng);
        if (source >= topic) ++source;
      } else if (!sib.empty() && u < spec.noise_rate + spec.sibling_rate) {
        std::uniform_int_distribution<std::size_t> pick(0, sib.size() - 1);
        source = sib[pick(rng)];
      }
      if (!text.empty()) text.push_back(' ');
      text += planted_term(source, word_in_block(rng));
    }
    std::string digits = std::to_string(k);
    std::string id = "doc" + std::string(static_cast<std::size_t>(width) - digits.size(), '0') + digits;
    out.labels.assignments[id] = {static_cast<std::size_t>(class_of[static_cast<std::size_t>(topic)])};
    docs.push_back({std::move(id), std::move(text)});
    out.ground_truth.push_back(topic);
  }
  out.corpus = make_corpus(std::move(docs), "synthetic");
  return out;
}

}  // namespace nmf_forge
