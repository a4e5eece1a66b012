#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "nmf_forge/corpus.hpp"
#include "nmf_forge/error.hpp"
#include "nmf_forge/matrix.hpp"
#include "nmf_forge/vectorizer.hpp"

namespace nmf_forge {

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

struct ContextMatrix {
  CountMatrix counts;  // d x d, symmetric
  int window = 5;
};

struct SppmiMatrix {
  Matrix values;  // d x d, symmetric, non-negative
  double shift = 5.0;
};

// Symmetric window of `window` positions on each side, over each document's
// token sequence restricted to vocabulary terms. Windows stop at document
// boundaries.
inline ContextMatrix count_cooccurrences(const Corpus& corpus, const Vocabulary& vocab,
                                         int window) {
  if (window < 1) throw Error("window must be at least 1");
  const auto d = static_cast<Index>(vocab.size());
  ContextMatrix out{CountMatrix::Zero(d, d), window};
  std::vector<Index> seq;
  for (const auto& doc : corpus.documents) {
    seq.clear();
    for (const auto& tok : tokenize(doc.text))
      if (auto i = vocab.index_of(tok)) seq.push_back(static_cast<Index>(*i));
    const auto len = seq.size();
    const auto w = static_cast<std::size_t>(window);
    for (std::size_t i = 0; i < len; ++i) {
      for (std::size_t j = i + 1; j < len && j - i <= w; ++j) {
        ++out.counts(seq[i], seq[j]);
        ++out.counts(seq[j], seq[i]);
      }
    }
  }
  return out;
}

// m_ij = max(ln(c_ij * c_.. / (c_i. * c_.j)) - ln N, 0), with m_ij = 0 when c_ij = 0.
inline SppmiMatrix sppmi(const ContextMatrix& c, double shift) {
  if (!(shift > 0.0)) throw Error("shift must be positive");
  const CountMatrix& counts = c.counts;
  const auto d = counts.rows();
  const std::int64_t total = counts.sum();
  if (total == 0) throw Error("empty co-occurrence");
  if (counts.minCoeff() < 0) throw Error("negative co-occurrence count");

  const Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> row_sums = counts.rowwise().sum();
  const Eigen::Matrix<std::int64_t, 1, Eigen::Dynamic> col_sums = counts.colwise().sum();
  const double log_shift = std::log(shift);
  const auto dtotal = static_cast<double>(total);

  SppmiMatrix out{Matrix::Zero(d, d), shift};
  for (Index j = 0; j < d; ++j) {
    for (Index i = 0; i < d; ++i) {
      const auto cij = counts(i, j);
      if (cij == 0) continue;
      const double pmi = std::log((static_cast<double>(cij) * dtotal) /
                                  (static_cast<double>(row_sums(i)) *
                                   static_cast<double>(col_sums(j))));
      out.values(i, j) = std::max(pmi - log_shift, 0.0);
    }
  }
  return out;
}

}  // namespace nmf_forge
