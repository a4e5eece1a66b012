#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "nmf_forge/hnmf.hpp"
#include "nmf_forge/matrix.hpp"
#include "nmf_forge/nmf.hpp"
#include "nmf_forge/semantic_nmf.hpp"
#include "nmf_forge/supervised.hpp"
#include "nmf_forge/vectorizer.hpp"

namespace nmf_forge {

using Json = nlohmann::ordered_json;

// Row-major: an array of rows.
inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const Json& rows) {
  if (!rows.is_array()) throw Error("matrix must be an array of rows");
  const auto r = static_cast<Index>(rows.size());
  const Index c = r == 0 ? 0 : static_cast<Index>(rows.front().size());
  Matrix m(r, c);
  for (Index i = 0; i < r; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != c) throw Error("ragged matrix rows");
    for (Index j = 0; j < c; ++j) m(i, j) = row[static_cast<std::size_t>(j)].get<double>();
  }
  return m;
}

inline Json factorization_to_json(const Factorization& f, const std::vector<std::string>& vocab_terms,
                                  const std::vector<std::string>& doc_ids) {
  return Json{{"rank", f.rank()},
              {"vocab_terms", vocab_terms},
              {"doc_ids", doc_ids},
              {"W", matrix_to_json(f.W)},
              {"H", matrix_to_json(f.H)},
              {"objective_trace", f.objective_trace}};
}

inline Factorization factorization_from_json(const Json& j) {
  Factorization f;
  f.W = matrix_from_json(j.at("W"));
  f.H = matrix_from_json(j.at("H"));
  f.objective_trace = j.at("objective_trace").get<std::vector<double>>();
  f.iterations_run = f.objective_trace.empty() ? 0 : static_cast<int>(f.objective_trace.size()) - 1;
  if (f.W.cols() != f.H.rows() || j.at("rank").get<Index>() != f.W.cols())
    throw Error("factorization rank does not match its matrices");
  return f;
}

inline Json trifactorization_to_json(const TriFactorization& f,
                                     const std::vector<std::string>& vocab_terms,
                                     const std::vector<std::string>& doc_ids) {
  return Json{{"rank", f.W.cols()},
              {"vocab_terms", vocab_terms},
              {"doc_ids", doc_ids},
              {"W", matrix_to_json(f.W)},
              {"H", matrix_to_json(f.H)},
              {"S", matrix_to_json(f.S)},
              {"objective_trace", f.objective_trace}};
}

inline Json topic_node_to_json(const TopicNode& node, const std::vector<std::string>& doc_ids,
                               const Vocabulary& vocab, std::size_t top_k, bool with_matrices) {
  Json ids = Json::array();
  for (auto j : node.doc_indices) ids.push_back(doc_ids.at(static_cast<std::size_t>(j)));
  Json out{{"level", node.level}, {"doc_ids", std::move(ids)}};
  if (node.factorization) {
    out["rank"] = node.factorization->rank();
    out["topics"] = topic_keywords(node.factorization->W, vocab, top_k);
    if (with_matrices) {
      out["W"] = matrix_to_json(node.factorization->W);
      out["H"] = matrix_to_json(node.factorization->H);
      out["objective_trace"] = node.factorization->objective_trace;
    }
  } else {
    out["rank"] = nullptr;
  }
  Json children = Json::array();
  for (const auto& c : node.children)
    children.push_back(topic_node_to_json(c, doc_ids, vocab, top_k, with_matrices));
  out["children"] = std::move(children);
  return out;
}

inline Json topic_tree_to_json(const TopicTree& tree, const std::vector<std::string>& doc_ids,
                               const Vocabulary& vocab, std::size_t top_k, bool with_matrices) {
  return Json{{"layer_ranks", tree.layer_ranks},
              {"leaves", tree.leaf_count()},
              {"root", topic_node_to_json(tree.root, doc_ids, vocab, top_k, with_matrices)}};
}

inline Json layer_chain_to_json(const LayerChain& chain, const Vocabulary& vocab,
                                std::size_t top_k, bool with_matrices) {
  Json layers = Json::array();
  for (std::size_t i = 0; i < chain.layers.size(); ++i) {
    Json layer{{"layer", i},
               {"rank", chain.ranks[i]},
               {"residual", chain.residuals[i]},
               {"topics", topic_keywords(layer_dictionary(chain, i), vocab, top_k)}};
    layer["merges_into"] = i == 0 ? Json(nullptr) : Json(merge_map(chain, i));
    if (with_matrices) layer["W"] = matrix_to_json(chain.layers[i]);
    layers.push_back(std::move(layer));
  }
  Json out{{"ranks", chain.ranks}, {"layers", std::move(layers)}};
  if (with_matrices) out["H"] = matrix_to_json(chain.H);
  return out;
}

}  // namespace nmf_forge
