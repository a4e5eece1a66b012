#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "nmf_forge/error.hpp"
#include "nmf_forge/matrix.hpp"
#include "nmf_forge/vectorizer.hpp"

namespace nmf_forge {

struct SolverOptions {
  int rank = 1;
  int max_iters = 500;
  double tol = 1e-5;  // relative objective change
  std::uint64_t seed = 0;
  double epsilon = 1e-10;

  void validate() const {
    if (rank < 1) throw Error("rank must be at least 1");
    if (max_iters < 1) throw Error("max_iters must be at least 1");
    if (!(tol >= 0.0)) throw Error("tol must be non-negative");
    if (!(epsilon > 0.0)) throw Error("epsilon must be positive");
  }
};

// trace[0] is the objective at initialization, trace[k] after iteration k.
struct Factorization {
  Matrix W;  // d x r
  Matrix H;  // r x n
  std::vector<double> objective_trace;
  int iterations_run = 0;

  Index rank() const { return W.cols(); }
};

namespace detail {

inline void require_nonnegative(const Matrix& x, const char* name) {
  if (!x.allFinite()) throw Error(std::string(name) + " contains non-finite entries");
  if (!is_nonnegative(x)) throw Error(std::string(name) + " must be non-negative");
}

inline bool converged(double previous, double current, double tol) {
  if (current == 0.0) return true;
  if (previous == 0.0) return false;
  return std::abs(previous - current) / previous < tol;
}

// H <- H .* (W'X) ./ (W'WH + eps)
inline void update_h(const Matrix& x, const Matrix& w, Matrix& h, double eps) {
  const Matrix numer = w.transpose() * x;
  const Matrix denom = (w.transpose() * w) * h;
  h = (h.array() * numer.array() / (denom.array() + eps)).matrix();
}

// W <- W .* (XH') ./ (WHH' + eps)
inline void update_w(const Matrix& x, Matrix& w, const Matrix& h, double eps) {
  const Matrix numer = x * h.transpose();
  const Matrix denom = w * (h * h.transpose());
  w = (w.array() * numer.array() / (denom.array() + eps)).matrix();
}

}  // namespace detail

inline double residual(const Matrix& x, const Matrix& w, const Matrix& h) {
  if (w.cols() != h.rows() || w.rows() != x.rows() || h.cols() != x.cols())
    throw Error("shape mismatch in residual");
  return (x - w * h).squaredNorm();
}

inline double residual(const Matrix& x, const Factorization& f) { return residual(x, f.W, f.H); }

// Lee-Seung multiplicative updates for min ||X - WH||_F^2 from a given start.
inline Factorization nmf(const Matrix& x, Matrix w0, Matrix h0, const SolverOptions& opts) {
  opts.validate();
  detail::require_nonnegative(x, "X");
  if (x.size() == 0 || x.maxCoeff() <= 0.0) throw Error("X is all zero");
  if (w0.rows() != x.rows() || h0.cols() != x.cols() || w0.cols() != h0.rows())
    throw Error("initial factors do not match X");
  detail::require_nonnegative(w0, "W0");
  detail::require_nonnegative(h0, "H0");

  Factorization f{std::move(w0), std::move(h0), {}, 0};
  f.objective_trace.push_back(residual(x, f.W, f.H));
  if (f.objective_trace.back() == 0.0) return f;

  for (int it = 0; it < opts.max_iters; ++it) {
    detail::update_h(x, f.W, f.H, opts.epsilon);
    detail::update_w(x, f.W, f.H, opts.epsilon);
    const double obj = residual(x, f.W, f.H);
    const double prev = f.objective_trace.back();
    f.objective_trace.push_back(obj);
    f.iterations_run = it + 1;
    if (detail::converged(prev, obj, opts.tol)) break;
  }
  return f;
}

// Random start: W then H drawn uniform in (0, 1) from `opts.seed`.
inline Factorization nmf(const Matrix& x, const SolverOptions& opts) {
  opts.validate();
  Rng rng(opts.seed);
  Matrix w0 = random_positive(x.rows(), opts.rank, rng);
  Matrix h0 = random_positive(opts.rank, x.cols(), rng);
  return nmf(x, std::move(w0), std::move(h0), opts);
}

inline Factorization nmf(const TermDocumentMatrix& x, const SolverOptions& opts) {
  return nmf(x.values, opts);
}

// Top-k terms of every column of W by descending weight, ties lexicographic.
// k is clamped to the vocabulary size.
inline std::vector<std::vector<std::string>> topic_keywords(const Matrix& w,
                                                            const Vocabulary& vocab,
                                                            std::size_t k) {
  if (static_cast<std::size_t>(w.rows()) != vocab.size())
    throw Error("W rows do not match the vocabulary");
  k = std::min(k, vocab.size());
  std::vector<std::vector<std::string>> out;
  std::vector<std::size_t> order(vocab.size());
  for (Index t = 0; t < w.cols(); ++t) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](std::size_t a, std::size_t b) {
                        const double wa = w(static_cast<Index>(a), t);
                        const double wb = w(static_cast<Index>(b), t);
                        if (wa != wb) return wa > wb;
                        return vocab.term(a) < vocab.term(b);
                      });
    std::vector<std::string> words;
    for (std::size_t i = 0; i < k; ++i) words.push_back(vocab.term(order[i]));
    out.push_back(std::move(words));
  }
  return out;
}

// 1-based position of `term` in column `topic` of W under the keyword order.
inline std::size_t term_rank_in_topic(const Matrix& w, const Vocabulary& vocab,
                                      std::size_t term_index, Index topic) {
  const double v = w(static_cast<Index>(term_index), topic);
  std::size_t rank = 1;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    if (i == term_index) continue;
    const double u = w(static_cast<Index>(i), topic);
    if (u > v || (u == v && vocab.term(i) < vocab.term(term_index))) ++rank;
  }
  return rank;
}

struct DocumentAssignment {
  std::vector<int> topics;        // argmax of each column of H
  std::vector<bool> unassigned;   // column of H was all zero
};

inline DocumentAssignment assign_documents(const Matrix& h) {
  DocumentAssignment out;
  out.topics.reserve(static_cast<std::size_t>(h.cols()));
  for (Index j = 0; j < h.cols(); ++j) {
    out.topics.push_back(h.rows() == 0 ? 0 : static_cast<int>(column_argmax(h, j)));
    out.unassigned.push_back(h.rows() == 0 || h.col(j).maxCoeff() <= 0.0);
  }
  return out;
}

}  // namespace nmf_forge
