#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "seqk/gram.hpp"
#include "seqk/types.hpp"

namespace seqk {

/// One-hot regression targets for a label list; columns follow the sorted
/// class names.
struct OneHotTargets {
  Eigen::MatrixXd y;  // n x C
  std::vector<std::string> class_names;
};

OneHotTargets one_hot_targets(const std::vector<std::string>& labels);

/// GP regression oracle onto one-hot class targets under Gaussian noise.
struct GpModel {
  Eigen::MatrixXd chol_lower;  // L with L L^T = K + (noise_var + jitter) I
  Eigen::MatrixXd alpha;       // (K + noise I)^{-1} Y
  Eigen::MatrixXd targets;     // Y, n x C
  std::vector<std::string> class_names;
  double noise_var = 0.1;
  double jitter = 0.0;  // extra diagonal added to make the factorization succeed
  KernelConfig config;
};

GpModel gp_fit(const Eigen::MatrixXd& kernel, const std::vector<std::string>& labels,
               double noise_var);

inline GpModel gp_fit(const GramMatrix& gram, const std::vector<std::string>& labels,
                      double noise_var) {
  GpModel m = gp_fit(gram.values, labels, noise_var);
  m.config = gram.config;
  return m;
}

struct GpPrediction {
  Eigen::MatrixXd mean;      // n_test x C posterior means
  Eigen::VectorXd variance;  // n_test latent variances (shared across outputs)
  std::vector<std::string> labels;  // argmax class per test point
};

/// Posterior means Gcross^T (K + noise I)^{-1} Y; cross rows follow the
/// training order, test_diag holds k(x*, x*) per test point.
GpPrediction gp_predict(const GpModel& model, const Eigen::MatrixXd& cross,
                        const Eigen::VectorXd& test_diag);

/// Sum over output columns of the Gaussian-process log marginal likelihood
///   -1/2 y^T (K + noise I)^{-1} y - 1/2 log det(K + noise I) - n/2 log(2 pi).
double log_marginal_likelihood(const Eigen::MatrixXd& kernel, const Eigen::MatrixXd& targets,
                               double noise_var);

/// Log marginal likelihood with its gradient in the differentiable kernel
/// parameters plus the noise variance (last entry).
struct LmlResult {
  double value = 0.0;
  Eigen::VectorXd gradient;
  std::vector<std::string> parameter_names;
};

LmlResult lml_value_gradient(const std::vector<Sequence>& data, const KernelConfig& cfg,
                             const Eigen::MatrixXd& targets, double noise_var);

}  // namespace seqk
