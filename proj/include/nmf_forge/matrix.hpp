#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace nmf_forge {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

using Rng = std::mt19937_64;

// Uniform draw from the open interval (0, 1).
inline double uniform_positive(Rng& rng) {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  double v = 0.0;
  while (v == 0.0) v = dist(rng);
  return v;
}

// Entries uniform in (0, 1), filled column-major.
inline Matrix random_positive(Index rows, Index cols, Rng& rng) {
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = uniform_positive(rng);
  return m;
}

// splitmix64 finalizer, used to derive child seeds independent of scheduling.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Row index of the largest entry in column j; ties go to the lowest row.
inline Index column_argmax(const Matrix& m, Index j) {
  Index best = 0;
  for (Index i = 1; i < m.rows(); ++i)
    if (m(i, j) > m(best, j)) best = i;
  return best;
}

inline Index row_argmax(const Matrix& m, Index i) {
  Index best = 0;
  for (Index j = 1; j < m.cols(); ++j)
    if (m(i, j) > m(i, best)) best = j;
  return best;
}

inline bool is_nonnegative(const Matrix& m) {
  return m.size() == 0 || m.minCoeff() >= 0.0;
}

inline bool all_finite(const Matrix& m) { return m.allFinite(); }

inline Matrix select_columns(const Matrix& m, const std::vector<Index>& cols) {
  Matrix out(m.rows(), static_cast<Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) out.col(static_cast<Index>(k)) = m.col(cols[k]);
  return out;
}

}  // namespace nmf_forge
