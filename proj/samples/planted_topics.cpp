// Generates a small planted corpus, factorizes it and prints the topics next
// to the planted ground truth.
#include <iostream>

#include "nmf_forge/nmf_forge.hpp"

int main() {
  nmf_forge::PlantedSpec spec;
  spec.n_topics = 3;
  spec.docs_per_topic = 12;
  spec.words_per_doc = 40;
  spec.vocab_per_topic = 8;
  spec.noise_rate = 0.1;
  spec.seed = 7;
  const auto synthetic = nmf_forge::generate(spec);

  const auto vocab = nmf_forge::build_vocabulary(synthetic.corpus, {});
  const auto x = nmf_forge::tfidf_matrix(synthetic.corpus, vocab);

  nmf_forge::SolverOptions opts;
  opts.rank = 3;
  opts.seed = 1;
  const auto f = nmf_forge::nmf(x, opts);

  const auto keywords = nmf_forge::topic_keywords(f.W, vocab, 5);
  for (std::size_t t = 0; t < keywords.size(); ++t) {
    std::cout << "topic " << t << ":";
    for (const auto& w : keywords[t]) std::cout << ' ' << w;
    std::cout << '\n';
  }
  const auto assignment = nmf_forge::assign_documents(f.H);
  for (std::size_t j = 0; j < x.doc_ids.size(); ++j)
    std::cout << x.doc_ids[j] << " planted " << synthetic.ground_truth[j] << " assigned "
              << assignment.topics[j] << '\n';
  std::cout << "residual " << nmf_forge::residual(x.values, f) << '\n';
}
