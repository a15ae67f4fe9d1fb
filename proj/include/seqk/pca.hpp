#pragma once

#include <Eigen/Dense>

#include "seqk/gram.hpp"
#include "seqk/types.hpp"

namespace seqk {

/// Principal-component scores in kernel feature space.
struct EmbeddingResult {
  Eigen::MatrixXd coordinates;  // n x p, column k scaled by sqrt(eigenvalue_k)
  Eigen::VectorXd eigenvalues;  // p values, nonincreasing
};

/// Double-centers the Gram (H G H with H = I - 11^T/n), eigendecomposes and
/// returns the top-p score columns. Eigenvector signs are fixed so the
/// largest-magnitude entry is positive.
EmbeddingResult kernel_pca(const Eigen::MatrixXd& gram, Index p);

inline EmbeddingResult kernel_pca(const GramMatrix& gram, Index p) {
  return kernel_pca(gram.values, p);
}

}  // namespace seqk
