#pragma once

#include "rtsgs/testmatrices.hpp"
#include "rtsgs/types.hpp"

#include <cstdint>

namespace testing {

using rtsgs::Index;
using rtsgs::MatrixD;
using rtsgs::VectorD;

inline MatrixD randn(Index n, Index m, std::uint64_t seed) { return rtsgs::gaussian_matrix(n, m, seed); }
inline VectorD randv(Index n, std::uint64_t seed) { return rtsgs::gaussian_matrix(n, 1, seed).col(0); }

/// max_j ‖A(:,j) - B(:,j)‖ / ‖B(:,j)‖
inline double colwise_rel(const MatrixD& A, const MatrixD& B) {
  double worst = 0.0;
  for (Index j = 0; j < B.cols(); ++j) {
    const double den = B.col(j).norm();
    worst = std::max(worst, (A.col(j) - B.col(j)).norm() / (den > 0 ? den : 1.0));
  }
  return worst;
}

}  // namespace testing
