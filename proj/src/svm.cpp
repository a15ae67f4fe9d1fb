#include "seqk/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace seqk {

namespace {

constexpr double kTau = 1e-12;

}  // namespace

BinarySvmSolution solve_binary_svm(const Eigen::MatrixXd& kernel, const Eigen::VectorXd& y,
                                   double c, double tol, long max_iterations,
                                   std::vector<double>* objective_trace) {
  const Index n = kernel.rows();
  if (kernel.cols() != n) throw std::invalid_argument("kernel matrix must be square");
  if (y.size() != n) throw std::invalid_argument("label vector length mismatch");
  if (!(c > 0.0)) throw std::domain_error("SVM regularization C must be > 0");
  if (!(tol > 0.0)) throw std::domain_error("SMO tolerance must be > 0");
  for (Index i = 0; i < n; ++i)
    if (y(i) != 1.0 && y(i) != -1.0)
      throw std::invalid_argument("binary labels must be +1 or -1");

  // Minimize 1/2 a^T Q a - e^T a with Q_ij = y_i y_j K_ij, 0 <= a <= C, y^T a = 0.
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd grad = Eigen::VectorXd::Constant(n, -1.0);

  BinarySvmSolution sol;
  auto objective = [&] { return 0.5 * alpha.dot(Eigen::VectorXd::Ones(n) - grad); };
  long iter = 0;
  for (; iter < max_iterations; ++iter) {
    if (objective_trace != nullptr) objective_trace->push_back(objective());
    // maximal violating pair over I_up / I_low, ties to the lowest index
    Index i_up = -1, i_low = -1;
    double g_max = -std::numeric_limits<double>::infinity();
    double g_min = std::numeric_limits<double>::infinity();
    for (Index t = 0; t < n; ++t) {
      const double yg = -y(t) * grad(t);
      const bool in_up = (y(t) > 0.0 && alpha(t) < c) || (y(t) < 0.0 && alpha(t) > 0.0);
      const bool in_low = (y(t) > 0.0 && alpha(t) > 0.0) || (y(t) < 0.0 && alpha(t) < c);
      if (in_up && yg > g_max) {
        g_max = yg;
        i_up = t;
      }
      if (in_low && yg < g_min) {
        g_min = yg;
        i_low = t;
      }
    }
    if (i_up < 0 || i_low < 0 || g_max - g_min <= tol) break;

    const Index i = i_up;
    const Index j = i_low;
    const double old_ai = alpha(i);
    const double old_aj = alpha(j);

    // quad = Q_ii + Q_jj -+ 2 Q_ij reduces to K_ii + K_jj - 2 K_ij either way
    if (y(i) != y(j)) {
      double quad = kernel(i, i) + kernel(j, j) - 2.0 * kernel(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad(i) - grad(j)) / quad;
      const double diff = alpha(i) - alpha(j);
      alpha(i) += delta;
      alpha(j) += delta;
      if (diff > 0.0) {
        if (alpha(j) < 0.0) {
          alpha(j) = 0.0;
          alpha(i) = diff;
        }
      } else {
        if (alpha(i) < 0.0) {
          alpha(i) = 0.0;
          alpha(j) = -diff;
        }
      }
      if (diff > 0.0) {
        if (alpha(i) > c) {
          alpha(i) = c;
          alpha(j) = c - diff;
        }
      } else {
        if (alpha(j) > c) {
          alpha(j) = c;
          alpha(i) = c + diff;
        }
      }
    } else {
      double quad = kernel(i, i) + kernel(j, j) - 2.0 * kernel(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad(i) - grad(j)) / quad;
      const double sum = alpha(i) + alpha(j);
      alpha(i) -= delta;
      alpha(j) += delta;
      if (sum > c) {
        if (alpha(i) > c) {
          alpha(i) = c;
          alpha(j) = sum - c;
        }
      } else {
        if (alpha(j) < 0.0) {
          alpha(j) = 0.0;
          alpha(i) = sum;
        }
      }
      if (sum > c) {
        if (alpha(j) > c) {
          alpha(j) = c;
          alpha(i) = sum - c;
        }
      } else {
        if (alpha(i) < 0.0) {
          alpha(i) = 0.0;
          alpha(j) = sum;
        }
      }
    }

    const double dai = alpha(i) - old_ai;
    const double daj = alpha(j) - old_aj;
    if (dai == 0.0 && daj == 0.0) break;  // numerically stuck; KKT gap is the caller's check
    for (Index t = 0; t < n; ++t)
      grad(t) += y(t) * (y(i) * kernel(t, i) * dai + y(j) * kernel(t, j) * daj);
  }
  sol.converged = iter < max_iterations;
  sol.iterations = iter;
  sol.alpha = alpha;
  // dual (maximization) objective: sum a_i - 1/2 a^T Q a
  sol.dual_objective = objective();
  if (objective_trace != nullptr) objective_trace->push_back(sol.dual_objective);

  // bias from the KKT conditions (free SVs average, else interval midpoint)
  double upper = std::numeric_limits<double>::infinity();
  double lower = -std::numeric_limits<double>::infinity();
  double sum_free = 0.0;
  Index n_free = 0;
  for (Index t = 0; t < n; ++t) {
    const double yg = y(t) * grad(t);
    if (alpha(t) >= c) {
      if (y(t) < 0.0)
        upper = std::min(upper, yg);
      else
        lower = std::max(lower, yg);
    } else if (alpha(t) <= 0.0) {
      if (y(t) > 0.0)
        upper = std::min(upper, yg);
      else
        lower = std::max(lower, yg);
    } else {
      ++n_free;
      sum_free += yg;
    }
  }
  const double rho = n_free > 0 ? sum_free / static_cast<double>(n_free) : (upper + lower) / 2.0;
  sol.bias = -rho;
  return sol;
}

SvmModel svm_train(const Eigen::MatrixXd& kernel, const std::vector<std::string>& labels,
                   double c, double tol) {
  const Index n = kernel.rows();
  if (static_cast<Index>(labels.size()) != n)
    throw std::invalid_argument("label count does not match Gram size");
  std::set<std::string> class_set(labels.begin(), labels.end());
  if (class_set.size() < 2)
    throw std::invalid_argument("SVM training requires at least two classes");

  SvmModel model;
  model.class_names.assign(class_set.begin(), class_set.end());
  model.c = c;
  model.tol = tol;

  const Eigen::MatrixXd* k_used = &kernel;
  Eigen::MatrixXd jittered;
  const PsdReport psd = check_psd(kernel, 1e-8);
  if (!psd.pass) {
    const double jitter = -psd.min_eig + 1e-12 * std::max(1.0, psd.max_eig);
    jittered = kernel + jitter * Eigen::MatrixXd::Identity(n, n);
    k_used = &jittered;
    model.warnings.push_back("training Gram failed the PSD check (min eigenvalue " +
                             std::to_string(psd.min_eig) + "); proceeding with jitter " +
                             std::to_string(jitter));
  }

  const auto n_classes = static_cast<Index>(model.class_names.size());
  model.dual_coefs.setZero(n, n_classes);
  model.alphas.setZero(n, n_classes);
  model.bias.setZero(n_classes);
  model.dual_objectives.resize(static_cast<std::size_t>(n_classes));
  for (Index cls = 0; cls < n_classes; ++cls) {
    Eigen::VectorXd y(n);
    for (Index i = 0; i < n; ++i)
      y(i) = labels[static_cast<std::size_t>(i)] == model.class_names[static_cast<std::size_t>(cls)]
                 ? 1.0
                 : -1.0;
    BinarySvmSolution sol = solve_binary_svm(*k_used, y, c, tol);
    if (!sol.converged)
      model.warnings.push_back("SMO hit the iteration cap for class " +
                               model.class_names[static_cast<std::size_t>(cls)]);
    model.alphas.col(cls) = sol.alpha;
    model.dual_coefs.col(cls) = sol.alpha.cwiseProduct(y);
    model.bias(cls) = sol.bias;
    model.dual_objectives[static_cast<std::size_t>(cls)] = sol.dual_objective;
  }
  return model;
}

Eigen::MatrixXd svm_decision_values(const SvmModel& model, const Eigen::MatrixXd& cross) {
  if (cross.rows() != model.dual_coefs.rows())
    throw std::invalid_argument("cross-kernel rows must match the training set size");
  Eigen::MatrixXd scores = cross.transpose() * model.dual_coefs;
  scores.rowwise() += model.bias.transpose();
  return scores;
}

std::vector<std::string> svm_predict(const SvmModel& model, const Eigen::MatrixXd& cross) {
  const Eigen::MatrixXd scores = svm_decision_values(model, cross);
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(scores.rows()));
  for (Index r = 0; r < scores.rows(); ++r) {
    Index best = 0;
    for (Index m = 1; m < scores.cols(); ++m)
      if (scores(r, m) > scores(r, best)) best = m;  // strict: ties keep the lowest index
    out.push_back(model.class_names[static_cast<std::size_t>(best)]);
  }
  return out;
}

}  // namespace seqk
