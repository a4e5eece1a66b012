#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "nmf_forge/error.hpp"
#include "nmf_forge/matrix.hpp"
#include "nmf_forge/nmf.hpp"

namespace nmf_forge {

// A node owns a set of document columns of X. Factorized nodes have exactly
// one child per topic (possibly empty); leaves have no factorization.
struct TopicNode {
  std::vector<Index> doc_indices;
  std::optional<Factorization> factorization;
  std::vector<TopicNode> children;
  int level = 0;

  bool is_leaf() const { return children.empty(); }
};

struct TopicTree {
  TopicNode root;
  std::vector<int> layer_ranks;

  std::size_t leaf_count() const {
    std::size_t count = 0;
    auto visit = [&](const auto& self, const TopicNode& n) -> void {
      if (n.is_leaf()) {
        ++count;
        return;
      }
      for (const auto& c : n.children) self(self, c);
    };
    visit(visit, root);
    return count;
  }
};

namespace detail {

inline void split_node(const Matrix& x, TopicNode& node, const std::vector<int>& ranks,
                       int branching, const SolverOptions& base, std::uint64_t seed) {
  const auto level = static_cast<std::size_t>(node.level);
  if (level >= ranks.size()) return;
  if (node.doc_indices.size() < 2) return;

  int requested = ranks[level] > 0 ? ranks[level] : branching;
  if (level > 0) requested = std::min<int>(requested, static_cast<int>(node.doc_indices.size()));

  const Matrix sub = select_columns(x, node.doc_indices);
  if (sub.maxCoeff() <= 0.0) return;

  SolverOptions opts = base;
  opts.rank = requested;
  opts.seed = seed;
  node.factorization = nmf(sub, opts);

  const auto assignment = assign_documents(node.factorization->H);
  node.children.resize(static_cast<std::size_t>(requested));
  for (std::size_t k = 0; k < node.doc_indices.size(); ++k) {
    auto& child = node.children[static_cast<std::size_t>(assignment.topics[k])];
    child.doc_indices.push_back(node.doc_indices[k]);
  }
  for (std::size_t c = 0; c < node.children.size(); ++c) {
    node.children[c].level = node.level + 1;
    split_node(x, node.children[c], ranks, branching, base, mix_seed(seed, c));
  }
}

}  // namespace detail

// Level 0 factorizes X at layer_ranks[0]; documents go to their argmax topic
// and every child with at least two documents is factorized again at the rank
// of the next level (a non-positive entry means `branching`), clamped to the
// child's document count. The tree has layer_ranks.size() factorized levels.
inline TopicTree topdown_hnmf(const Matrix& x, const std::vector<int>& layer_ranks, int branching,
                              const SolverOptions& opts) {
  if (layer_ranks.empty()) throw Error("layer_ranks must not be empty");
  if (layer_ranks[0] < 2) throw Error("root rank must be at least 2");
  if (branching < 2) throw Error("branching must be at least 2");
  for (std::size_t i = 1; i < layer_ranks.size(); ++i)
    if (layer_ranks[i] == 1) throw Error("layer ranks must be at least 2");
  if (x.size() == 0 || x.maxCoeff() <= 0.0) throw Error("X is all zero");

  TopicTree tree;
  tree.layer_ranks = layer_ranks;
  tree.root.doc_indices.resize(static_cast<std::size_t>(x.cols()));
  for (Index j = 0; j < x.cols(); ++j) tree.root.doc_indices[static_cast<std::size_t>(j)] = j;
  tree.root.level = 0;
  detail::split_node(x, tree.root, layer_ranks, branching, opts, opts.seed);
  return tree;
}

// X ~ W(0) W(1) ... W(L) H(L).
struct LayerChain {
  std::vector<Matrix> layers;  // W(0): d x k0, W(i): k(i-1) x k(i)
  Matrix H;                    // k_L x n
  std::vector<int> ranks;
  std::vector<double> residuals;  // ||X - W(0)...W(i) H(i)||^2 per layer
  std::vector<Factorization> factorizations;
};

// Product W(0) ... W(layer): the effective dictionary of that layer.
inline Matrix layer_dictionary(const LayerChain& chain, std::size_t layer) {
  if (layer >= chain.layers.size()) throw Error("layer index out of range");
  Matrix product = chain.layers[0];
  for (std::size_t i = 1; i <= layer; ++i) product = product * chain.layers[i];
  return product;
}

// Layer 0 is NMF(X, k0); layer i factorizes H(i-1) at k_i. Layer 0 uses
// opts.seed so that a single-layer chain equals nmf() on the same seed.
inline LayerChain bottomup_hnmf(const Matrix& x, const std::vector<int>& rank_sequence,
                                const SolverOptions& opts) {
  if (rank_sequence.empty()) throw Error("rank sequence must not be empty");
  if (rank_sequence[0] < 2) throw Error("first rank must be at least 2");
  for (std::size_t i = 1; i < rank_sequence.size(); ++i)
    if (!(rank_sequence[i] < rank_sequence[i - 1]) || rank_sequence[i] < 1)
      throw Error("rank sequence must be strictly decreasing");

  LayerChain chain;
  chain.ranks = rank_sequence;
  Matrix current = x;
  Matrix dictionary;
  for (std::size_t i = 0; i < rank_sequence.size(); ++i) {
    SolverOptions o = opts;
    o.rank = rank_sequence[i];
    o.seed = i == 0 ? opts.seed : mix_seed(opts.seed, i);
    Factorization f = nmf(current, o);
    dictionary = i == 0 ? f.W : Matrix(dictionary * f.W);
    chain.layers.push_back(f.W);
    chain.residuals.push_back(residual(x, dictionary, f.H));
    current = f.H;
    chain.factorizations.push_back(std::move(f));
  }
  chain.H = current;
  return chain;
}

// For layer i >= 1, the layer-i topic each layer-(i-1) topic merges into: the
// argmax of every row of W(i).
inline std::vector<int> merge_map(const LayerChain& chain, std::size_t layer) {
  if (layer == 0 || layer >= chain.layers.size()) throw Error("merge layer out of range");
  const Matrix& w = chain.layers[layer];
  std::vector<int> out;
  for (Index i = 0; i < w.rows(); ++i) out.push_back(static_cast<int>(row_argmax(w, i)));
  return out;
}

}  // namespace nmf_forge
