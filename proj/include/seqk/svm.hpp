#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "seqk/gram.hpp"
#include "seqk/types.hpp"

namespace seqk {

/// Result of one binary SMO solve (dual soft-margin SVM).
struct BinarySvmSolution {
  Eigen::VectorXd alpha;   // box-constrained duals in [0, C]
  double bias = 0.0;       // decision f(x) = sum_i alpha_i y_i K(x_i, x) + bias
  double dual_objective = 0.0;
  long iterations = 0;
  bool converged = true;
};

/// SMO with maximal-violating-pair working-set selection; ties broken by the
/// lowest index, making the solve deterministic. When objective_trace is
/// given, the dual objective is appended once per iteration.
BinarySvmSolution solve_binary_svm(const Eigen::MatrixXd& kernel, const Eigen::VectorXd& y,
                                   double c, double tol, long max_iterations = 10'000'000,
                                   std::vector<double>* objective_trace = nullptr);

/// One-vs-rest kernel SVM trained on a precomputed Gram.
struct SvmModel {
  std::vector<std::string> class_names;   // sorted
  Eigen::MatrixXd dual_coefs;             // n x C, entry = alpha * y of that binary problem
  Eigen::MatrixXd alphas;                 // n x C, raw duals
  Eigen::VectorXd bias;                   // C
  std::vector<double> dual_objectives;    // per class
  std::vector<std::string> support_ids;   // training ids, row order of dual_coefs
  double c = 1.0;
  double tol = 1e-3;
  KernelConfig config;
  std::vector<std::string> warnings;
};

SvmModel svm_train(const Eigen::MatrixXd& kernel, const std::vector<std::string>& labels,
                   double c, double tol = 1e-3);

inline SvmModel svm_train(const GramMatrix& gram, const std::vector<std::string>& labels,
                          double c, double tol = 1e-3) {
  SvmModel m = svm_train(gram.values, labels, c, tol);
  m.support_ids = gram.ids;
  m.config = gram.config;
  return m;
}

/// Per-class decision values; cross-kernel rows must follow the training
/// point order, columns index test points. Returns n_test x C.
Eigen::MatrixXd svm_decision_values(const SvmModel& model, const Eigen::MatrixXd& cross);

/// Argmax class per test point; ties resolve to the lowest class index.
std::vector<std::string> svm_predict(const SvmModel& model, const Eigen::MatrixXd& cross);

}  // namespace seqk
