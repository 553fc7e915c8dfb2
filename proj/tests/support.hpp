// Shared helpers for the test binaries.
#pragma once

#include "oracle/naive.hpp"
#include "qlie/zlinalg.hpp"

#include <random>

namespace testing_support {

inline oracle::Group to_oracle(const qlie::AbelianStructure& s) { return {s.free_rank, s.torsion}; }

inline std::string show(const oracle::Group& g) {
  qlie::AbelianStructure s{g.free_rank, g.torsion};
  return s.to_string();
}

inline qlie::Matrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int lo, int hi,
                                  double density = 1.0) {
  std::uniform_int_distribution<int> val(lo, hi);
  std::bernoulli_distribution keep(density);
  qlie::Matrix m(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i)
      if (keep(rng)) m.set(i, j, val(rng));
  return m;
}

/// U M V = S, S diagonal with a nonnegative divisibility chain, U and V unimodular.
inline std::string smith_defect(const qlie::Matrix& m, const qlie::SmithForm& f) {
  if (!(f.U * m * f.V == f.S)) return "U*M*V != S";
  auto s = f.S.to_dense();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j && s[i][j] != 0) return "S not diagonal";
  auto d = f.diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 0) return "negative diagonal entry";
    if (i + 1 < d.size() && d[i] == 0 && d[i + 1] != 0) return "zero before nonzero on diagonal";
    if (i + 1 < d.size() && d[i] != 0 && d[i + 1] % d[i] != 0) return "divisibility chain broken";
  }
  if (abs(oracle::bareiss_det(f.U.to_dense())) != 1) return "|det U| != 1";
  if (abs(oracle::bareiss_det(f.V.to_dense())) != 1) return "|det V| != 1";
  return "";
}

}  // namespace testing_support
