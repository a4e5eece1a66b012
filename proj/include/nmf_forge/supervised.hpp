#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nmf_forge/corpus.hpp"
#include "nmf_forge/error.hpp"
#include "nmf_forge/matrix.hpp"
#include "nmf_forge/nmf.hpp"

namespace nmf_forge {

enum class LabelMode {
  multi,   // any number of labels per document
  single,  // exactly one label per document
};

struct LabelMatrix {
  Matrix Y;  // p x n, entries in {0, 1}
  std::vector<std::string> classes;
};

inline LabelMatrix label_matrix(const LabelSet& labels, const std::vector<std::string>& doc_ids,
                                LabelMode mode = LabelMode::multi) {
  const auto p = static_cast<Index>(labels.num_classes());
  LabelMatrix out{Matrix::Zero(p, static_cast<Index>(doc_ids.size())), labels.classes};
  for (std::size_t j = 0; j < doc_ids.size(); ++j) {
    const auto& set = labels.labels_of(doc_ids[j]);
    if (mode == LabelMode::single && set.size() != 1)
      throw Error("document " + doc_ids[j] + " must carry exactly one label");
    for (auto k : set) {
      if (k >= labels.num_classes()) throw Error("class index out of range");
      out.Y(static_cast<Index>(k), static_cast<Index>(j)) = 1.0;
    }
  }
  return out;
}

inline LabelSet to_label_set(const LabelMatrix& y, const std::vector<std::string>& doc_ids) {
  if (static_cast<std::size_t>(y.Y.cols()) != doc_ids.size())
    throw Error("label matrix does not match document count");
  LabelSet out;
  out.classes = y.classes;
  for (std::size_t j = 0; j < doc_ids.size(); ++j) {
    auto& set = out.assignments[doc_ids[j]];
    for (Index k = 0; k < y.Y.rows(); ++k)
      if (y.Y(k, static_cast<Index>(j)) != 0.0) set.insert(static_cast<std::size_t>(k));
  }
  return out;
}

// Columns are all ones (label known) or all zeros (label hidden).
struct MaskMatrix {
  Matrix L;

  static MaskMatrix from_known(Index p, const std::vector<bool>& known) {
    MaskMatrix m{Matrix::Zero(p, static_cast<Index>(known.size()))};
    for (std::size_t j = 0; j < known.size(); ++j)
      if (known[j]) m.L.col(static_cast<Index>(j)).setOnes();
    return m;
  }

  static MaskMatrix all_known(Index p, Index n) { return MaskMatrix{Matrix::Ones(p, n)}; }

  bool is_valid() const {
    for (Index j = 0; j < L.cols(); ++j) {
      const auto col = L.col(j);
      if (!((col.array() == 1.0).all() || (col.array() == 0.0).all())) return false;
    }
    return true;
  }
};

struct SupervisedModel {
  Matrix W;  // d x r
  Matrix H;  // r x m (SNMF) or r x n (SSNMF)
  Matrix B;  // p x r
  double lambda = 1.0;
  std::vector<double> objective_trace;
  int iterations_run = 0;
};

// ||X - WH||^2 + lambda ||L .* (Y - BH)||^2
inline double supervised_objective(const Matrix& x, const Matrix& y, const Matrix& l,
                                   const Matrix& w, const Matrix& h, const Matrix& b,
                                   double lambda) {
  return (x - w * h).squaredNorm() + lambda * (l.array() * (y - b * h).array()).matrix().squaredNorm();
}

struct SupervisedInit {
  Matrix W, H, B;
};

namespace detail {

inline SupervisedModel masked_solve(const Matrix& x, const Matrix& y, const Matrix& l,
                                    double lambda, const SolverOptions& opts,
                                    std::optional<SupervisedInit> init) {
  opts.validate();
  require_nonnegative(x, "X");
  require_nonnegative(y, "Y");
  if (!(lambda > 0.0)) throw Error("lambda must be positive");
  if (y.cols() != x.cols() || l.rows() != y.rows() || l.cols() != y.cols())
    throw Error("shape mismatch between X, Y and the mask");
  if (x.size() == 0 || x.maxCoeff() <= 0.0) throw Error("X is all zero");

  SupervisedModel m;
  m.lambda = lambda;
  if (init) {
    m.W = std::move(init->W);
    m.H = std::move(init->H);
    m.B = std::move(init->B);
    if (m.W.rows() != x.rows() || m.W.cols() != m.H.rows() || m.H.cols() != x.cols() ||
        m.B.rows() != y.rows() || m.B.cols() != m.H.rows())
      throw Error("initial factors do not match X and Y");
  } else {
    Rng rng(opts.seed);
    m.W = random_positive(x.rows(), opts.rank, rng);
    m.H = random_positive(opts.rank, x.cols(), rng);
    m.B = random_positive(y.rows(), opts.rank, rng);
  }

  const double eps = opts.epsilon;
  const Matrix ly = (l.array() * y.array()).matrix();
  m.objective_trace.push_back(supervised_objective(x, y, l, m.W, m.H, m.B, lambda));
  if (m.objective_trace.back() == 0.0) return m;

  for (int it = 0; it < opts.max_iters; ++it) {
    {
      const Matrix lbh = (l.array() * (m.B * m.H).array()).matrix();
      const Matrix numer = m.W.transpose() * x + lambda * m.B.transpose() * ly;
      const Matrix denom = (m.W.transpose() * m.W) * m.H + lambda * m.B.transpose() * lbh;
      m.H = (m.H.array() * numer.array() / (denom.array() + eps)).matrix();
    }
    update_w(x, m.W, m.H, eps);
    {
      const Matrix lbh = (l.array() * (m.B * m.H).array()).matrix();
      const Matrix numer = ly * m.H.transpose();
      const Matrix denom = lbh * m.H.transpose();
      m.B = (m.B.array() * numer.array() / (denom.array() + eps)).matrix();
    }
    const double obj = supervised_objective(x, y, l, m.W, m.H, m.B, lambda);
    const double prev = m.objective_trace.back();
    m.objective_trace.push_back(obj);
    m.iterations_run = it + 1;
    if (converged(prev, obj, opts.tol)) break;
  }
  return m;
}

}  // namespace detail

// min ||X_train - WH||^2 + lambda ||Y_train - BH||^2
inline SupervisedModel snmf_train(const Matrix& x_train, const Matrix& y_train, double lambda,
                                  const SolverOptions& opts,
                                  std::optional<SupervisedInit> init = std::nullopt) {
  if (x_train.cols() != y_train.cols()) throw Error("X_train and Y_train column counts differ");
  return detail::masked_solve(x_train, y_train, Matrix::Ones(y_train.rows(), y_train.cols()),
                              lambda, opts, std::move(init));
}

struct Prediction {
  Matrix scores;             // p x k, unclipped
  bool regularized = false;  // W'W was near singular
};

// B (W'W)^-1 W' X_test.
inline Prediction snmf_predict(const SupervisedModel& model, const Matrix& x_test) {
  if (x_test.rows() != model.W.rows()) throw Error("X_test rows do not match W");
  const Matrix gram = model.W.transpose() * model.W;
  const Matrix rhs = model.W.transpose() * x_test;
  Prediction out;
  Eigen::LLT<Matrix> llt(gram);
  if (llt.info() == Eigen::Success && llt.rcond() > 1e-12) {
    out.scores = model.B * llt.solve(rhs);
    return out;
  }
  const double r = static_cast<double>(gram.rows());
  double delta = 1e-10 * gram.trace() / r;
  if (!(delta > 0.0)) delta = 1e-10;
  const Matrix reg = gram + delta * Matrix::Identity(gram.rows(), gram.cols());
  out.scores = model.B * reg.ldlt().solve(rhs);
  out.regularized = true;
  return out;
}

struct SsnmfResult {
  SupervisedModel model;
  Matrix y_prime;  // (J - L) .* (BH)
};

// min ||X - WH||^2 + lambda ||L .* (Y - BH)||^2 over all n documents.
inline SsnmfResult ssnmf(const Matrix& x, const Matrix& y, const MaskMatrix& mask, double lambda,
                         const SolverOptions& opts,
                         std::optional<SupervisedInit> init = std::nullopt) {
  if (!mask.is_valid()) throw Error("mask columns must be all ones or all zeros");
  if (mask.L.size() == 0 || mask.L.maxCoeff() == 0.0) throw Error("no supervision");
  SsnmfResult out{detail::masked_solve(x, y, mask.L, lambda, opts, std::move(init)), {}};
  const Matrix bh = out.model.B * out.model.H;
  out.y_prime = ((1.0 - mask.L.array()) * bh.array()).matrix();
  return out;
}

struct Binarized {
  Matrix values;               // one 1 per column
  std::vector<bool> degenerate;  // column was all zero
};

inline Binarized binarize_prediction(const Matrix& scores) {
  Binarized out{Matrix::Zero(scores.rows(), scores.cols()), {}};
  if (scores.rows() == 0) throw Error("cannot binarize a matrix without rows");
  for (Index j = 0; j < scores.cols(); ++j) {
    out.values(column_argmax(scores, j), j) = 1.0;
    out.degenerate.push_back((scores.col(j).array() == 0.0).all());
  }
  return out;
}

// Fraction of columns whose predicted class is among the true labels.
inline double las(const Matrix& predicted, const Matrix& truth) {
  if (predicted.rows() != truth.rows() || predicted.cols() != truth.cols())
    throw Error("shape mismatch in LAS");
  if (predicted.cols() == 0) throw Error("LAS of an empty test set");
  Index hits = 0;
  for (Index j = 0; j < predicted.cols(); ++j) {
    const auto col = predicted.col(j).array();
    if ((col == 1.0).count() != 1 || (col == 0.0).count() != predicted.rows() - 1)
      throw Error("predicted labels must have exactly one 1 per column");
    const Index c = column_argmax(predicted, j);
    if (truth(c, j) != 0.0) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(predicted.cols());
}

struct TrainTestSplit {
  std::vector<Index> train_cols;  // ascending
  std::vector<Index> test_cols;   // ascending
  Matrix X_train, Y_train, X_test, Y_test;
  MaskMatrix mask;  // over all n columns, zero on the test columns
};

inline std::vector<Index> shuffled_indices(Index n, std::uint64_t seed) {
  std::vector<Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Index{0});
  Rng rng(seed);
  for (std::size_t i = idx.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(idx[i - 1], idx[pick(rng)]);
  }
  return idx;
}

// Uniform random column split with round(fraction * n) training columns.
inline TrainTestSplit split_train_test(const Matrix& x, const Matrix& y, double fraction,
                                       std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw Error("split fraction must lie in (0, 1)");
  if (x.cols() != y.cols()) throw Error("X and Y column counts differ");
  const Index n = x.cols();
  const auto n_train = static_cast<Index>(std::llround(fraction * static_cast<double>(n)));
  if (n_train <= 0 || n_train >= n) throw Error("split leaves an empty side");

  auto order = shuffled_indices(n, seed);
  TrainTestSplit s;
  s.train_cols.assign(order.begin(), order.begin() + n_train);
  s.test_cols.assign(order.begin() + n_train, order.end());
  std::sort(s.train_cols.begin(), s.train_cols.end());
  std::sort(s.test_cols.begin(), s.test_cols.end());
  s.X_train = select_columns(x, s.train_cols);
  s.Y_train = select_columns(y, s.train_cols);
  s.X_test = select_columns(x, s.test_cols);
  s.Y_test = select_columns(y, s.test_cols);
  std::vector<bool> known(static_cast<std::size_t>(n), false);
  for (auto c : s.train_cols) known[static_cast<std::size_t>(c)] = true;
  s.mask = MaskMatrix::from_known(y.rows(), known);
  return s;
}

}  // namespace nmf_forge
