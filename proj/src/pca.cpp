#include "seqk/pca.hpp"

#include <cmath>
#include <stdexcept>

namespace seqk {

EmbeddingResult kernel_pca(const Eigen::MatrixXd& gram, Index p) {
  const Index n = gram.rows();
  if (gram.cols() != n) throw std::invalid_argument("kernel PCA requires a square Gram matrix");
  if (p < 1 || p > n) throw std::domain_error("component count must satisfy 1 <= p <= n");

  const Eigen::VectorXd row_means = gram.rowwise().mean();
  const double total_mean = row_means.mean();
  Eigen::MatrixXd centered = gram;
  centered.colwise() -= row_means;
  centered.rowwise() -= row_means.transpose();
  centered.array() += total_mean;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(centered);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed in kernel PCA");

  EmbeddingResult out;
  out.coordinates.resize(n, p);
  out.eigenvalues.resize(p);
  for (Index k = 0; k < p; ++k) {
    const Index src = n - 1 - k;  // solver returns ascending order
    const double lambda = solver.eigenvalues()(src);
    Eigen::VectorXd v = solver.eigenvectors().col(src);
    Index pivot = 0;
    v.cwiseAbs().maxCoeff(&pivot);
    if (v(pivot) < 0.0) v = -v;
    out.eigenvalues(k) = lambda;
    out.coordinates.col(k) = v * std::sqrt(std::max(lambda, 0.0));
  }
  // the null-space component of the centered Gram carries a rounding-level
  // mean; keep every score column exactly centered
  out.coordinates.rowwise() -= out.coordinates.colwise().mean();
  return out;
}

}  // namespace seqk
