#pragma once

#include <utility>
#include <vector>

#include "nmf_forge/cooccurrence.hpp"
#include "nmf_forge/error.hpp"
#include "nmf_forge/matrix.hpp"
#include "nmf_forge/nmf.hpp"

namespace nmf_forge {

struct TriFactorization {
  Matrix W;  // d x r
  Matrix S;  // r x r, symmetric
  Matrix H;  // r x n
  std::vector<double> objective_trace;
  int iterations_run = 0;
  // Iterations where the plain multiplicative W step raised the objective and
  // a shortened step along the same direction was taken instead.
  int safeguarded_steps = 0;
};

// 1/2 ||X - WH||^2 + 1/2 ||M - W S W'||^2
inline double semantic_objective(const Matrix& x, const Matrix& m, const Matrix& w,
                                 const Matrix& s, const Matrix& h) {
  return 0.5 * (x - w * h).squaredNorm() + 0.5 * (m - w * s * w.transpose()).squaredNorm();
}

inline TriFactorization semantic_nmf(const Matrix& x, const Matrix& m, Matrix w0, Matrix s0,
                                     Matrix h0, const SolverOptions& opts) {
  opts.validate();
  detail::require_nonnegative(x, "X");
  detail::require_nonnegative(m, "M");
  if (m.rows() != x.rows() || m.cols() != x.rows())
    throw Error("SPPMI matrix must be d x d with d = rows of X");
  if (w0.rows() != x.rows() || w0.cols() != s0.rows() || s0.rows() != s0.cols() ||
      h0.rows() != s0.rows() || h0.cols() != x.cols())
    throw Error("initial factors do not match X");

  const double eps = opts.epsilon;
  TriFactorization f{std::move(w0), std::move(s0), std::move(h0), {}, 0, 0};
  f.S = 0.5 * (f.S + f.S.transpose()).eval();
  f.objective_trace.push_back(semantic_objective(x, m, f.W, f.S, f.H));
  if (f.objective_trace.back() == 0.0) return f;

  for (int it = 0; it < opts.max_iters; ++it) {
    const double prev = f.objective_trace.back();

    detail::update_h(x, f.W, f.H, eps);

    {
      const Matrix wtw = f.W.transpose() * f.W;
      const Matrix numer = f.W.transpose() * m * f.W;
      const Matrix denom = wtw * f.S * wtw;
      f.S = (f.S.array() * numer.array() / (denom.array() + eps)).matrix();
      f.S = 0.5 * (f.S + f.S.transpose()).eval();
    }

    {
      const Matrix ws = f.W * f.S;
      const Matrix numer = x * f.H.transpose() + 2.0 * m * ws;
      const Matrix denom = f.W * (f.H * f.H.transpose()) + 2.0 * ws * (f.W.transpose() * ws);
      Matrix candidate = (f.W.array() * numer.array() / (denom.array() + eps)).matrix();
      double obj = semantic_objective(x, m, candidate, f.S, f.H);
      if (obj > prev) {
        ++f.safeguarded_steps;
        const Matrix start = f.W;
        const Matrix step = candidate - start;
        double t = 0.5;
        bool accepted = false;
        for (int k = 0; k < 30; ++k, t *= 0.5) {
          candidate = start + t * step;
          obj = semantic_objective(x, m, candidate, f.S, f.H);
          if (obj <= prev) {
            accepted = true;
            break;
          }
        }
        if (!accepted) {
          candidate = start;
          obj = semantic_objective(x, m, candidate, f.S, f.H);
        }
      }
      f.W = std::move(candidate);
      f.objective_trace.push_back(obj);
    }

    f.iterations_run = it + 1;
    if (detail::converged(prev, f.objective_trace.back(), opts.tol)) break;
  }
  return f;
}

// Random start: W and H as in nmf(), then S = I * mean(M) plus small
// symmetric uniform noise.
inline TriFactorization semantic_nmf(const Matrix& x, const Matrix& m, const SolverOptions& opts) {
  opts.validate();
  Rng rng(opts.seed);
  Matrix w0 = random_positive(x.rows(), opts.rank, rng);
  Matrix h0 = random_positive(opts.rank, x.cols(), rng);
  const double mean = m.size() > 0 ? m.mean() : 0.0;
  const double noise = 0.01 * (mean > 0.0 ? mean : 1.0);
  Matrix s0 = mean * Matrix::Identity(opts.rank, opts.rank) +
              noise * random_positive(opts.rank, opts.rank, rng);
  s0 = 0.5 * (s0 + s0.transpose()).eval();
  return semantic_nmf(x, m, std::move(w0), std::move(s0), std::move(h0), opts);
}

inline TriFactorization semantic_nmf(const TermDocumentMatrix& x, const SppmiMatrix& m,
                                     const SolverOptions& opts) {
  if (static_cast<std::size_t>(m.values.rows()) != x.vocab.size())
    throw Error("SPPMI matrix is not aligned with the vocabulary of X");
  return semantic_nmf(x.values, m.values, opts);
}

}  // namespace nmf_forge
