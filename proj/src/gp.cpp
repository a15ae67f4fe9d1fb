#include "seqk/gp.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "seqk/gradients.hpp"

namespace seqk {

OneHotTargets one_hot_targets(const std::vector<std::string>& labels) {
  OneHotTargets t;
  std::set<std::string> names(labels.begin(), labels.end());
  t.class_names.assign(names.begin(), names.end());
  t.y.setZero(static_cast<Index>(labels.size()), static_cast<Index>(t.class_names.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto it = std::lower_bound(t.class_names.begin(), t.class_names.end(), labels[i]);
    t.y(static_cast<Index>(i), static_cast<Index>(it - t.class_names.begin())) = 1.0;
  }
  return t;
}

namespace {

struct Factorization {
  Eigen::LLT<Eigen::MatrixXd> llt;
  double jitter = 0.0;
};

// K + noise I, with escalating diagonal jitter if Cholesky fails:
// 1e-6 tr(A)/n, then x10, three attempts.
Factorization factorize(const Eigen::MatrixXd& kernel, double noise_var) {
  if (!(noise_var > 0.0)) throw std::domain_error("noise variance must be > 0");
  const Index n = kernel.rows();
  if (kernel.cols() != n) throw std::invalid_argument("kernel matrix must be square");
  Eigen::MatrixXd a = kernel;
  a.diagonal().array() += noise_var;
  Factorization f;
  f.llt.compute(a);
  if (f.llt.info() == Eigen::Success) return f;
  const double base = 1e-6 * a.trace() / static_cast<double>(n);
  double jitter = base;
  for (int attempt = 0; attempt < 3; ++attempt, jitter *= 10.0) {
    Eigen::MatrixXd aj = a;
    aj.diagonal().array() += jitter;
    f.llt.compute(aj);
    if (f.llt.info() == Eigen::Success) {
      f.jitter = jitter;
      return f;
    }
  }
  throw std::runtime_error("Cholesky factorization failed even with maximal jitter");
}

double log_det_from_llt(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

}  // namespace

GpModel gp_fit(const Eigen::MatrixXd& kernel, const std::vector<std::string>& labels,
               double noise_var) {
  if (static_cast<Index>(labels.size()) != kernel.rows())
    throw std::invalid_argument("label count does not match Gram size");
  OneHotTargets targets = one_hot_targets(labels);
  Factorization f = factorize(kernel, noise_var);

  GpModel model;
  model.chol_lower = f.llt.matrixL();
  model.alpha = f.llt.solve(targets.y);
  model.targets = std::move(targets.y);
  model.class_names = std::move(targets.class_names);
  model.noise_var = noise_var;
  model.jitter = f.jitter;
  return model;
}

GpPrediction gp_predict(const GpModel& model, const Eigen::MatrixXd& cross,
                        const Eigen::VectorXd& test_diag) {
  const Index n = model.alpha.rows();
  if (cross.rows() != n)
    throw std::invalid_argument("cross-kernel rows must match the training set size");
  if (test_diag.size() != cross.cols())
    throw std::invalid_argument("test diagonal length must match the test count");

  GpPrediction out;
  out.mean = cross.transpose() * model.alpha;
  const Eigen::MatrixXd v =
      model.chol_lower.triangularView<Eigen::Lower>().solve(cross);
  out.variance = (test_diag.array() - v.colwise().squaredNorm().transpose().array()).matrix();
  out.labels.reserve(static_cast<std::size_t>(out.mean.rows()));
  for (Index r = 0; r < out.mean.rows(); ++r) {
    Index best = 0;
    for (Index m = 1; m < out.mean.cols(); ++m)
      if (out.mean(r, m) > out.mean(r, best)) best = m;
    out.labels.push_back(model.class_names[static_cast<std::size_t>(best)]);
  }
  return out;
}

double log_marginal_likelihood(const Eigen::MatrixXd& kernel, const Eigen::MatrixXd& targets,
                               double noise_var) {
  if (targets.rows() != kernel.rows())
    throw std::invalid_argument("target rows must match Gram size");
  Factorization f = factorize(kernel, noise_var);
  const Eigen::MatrixXd alpha = f.llt.solve(targets);
  const double n = static_cast<double>(kernel.rows());
  const double n_out = static_cast<double>(targets.cols());
  const double data_fit = -0.5 * (targets.array() * alpha.array()).sum();
  return data_fit - 0.5 * n_out * log_det_from_llt(f.llt) -
         0.5 * n_out * n * std::log(2.0 * M_PI);
}

LmlResult lml_value_gradient(const std::vector<Sequence>& data, const KernelConfig& cfg,
                             const Eigen::MatrixXd& targets, double noise_var) {
  require_differentiable(cfg);
  const auto n = static_cast<Index>(data.size());
  if (targets.rows() != n) throw std::invalid_argument("target rows must match dataset size");
  if (n == 0) throw std::invalid_argument("empty dataset");

  Index lmax = 0;
  for (const auto& s : data) lmax = std::max(lmax, s.length());
  PathStructureGradients tables;
  const PathStructureGradients* pg = nullptr;
  if (cfg.structure.kind == StructureKernelKind::path && lmax >= 1) {
    tables = path_structure_gradient_tables(lmax, cfg.structure.chv, cfg.structure.cd);
    pg = &tables;
  }

  const auto names = gradient_parameter_names(cfg);
  const auto n_params = static_cast<Index>(names.size());

  std::vector<KernelValueGradient> selfs;
  if (cfg.normalize) {
    selfs.reserve(data.size());
    for (const auto& s : data) selfs.push_back(kernel_value_gradient_raw(s, s, cfg, pg));
  }

  Eigen::MatrixXd kernel(n, n);
  std::vector<Eigen::MatrixXd> dk(static_cast<std::size_t>(n_params),
                                  Eigen::MatrixXd::Zero(n, n));
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      KernelValueGradient kg = kernel_value_gradient_raw(data[static_cast<std::size_t>(i)],
                                                         data[static_cast<std::size_t>(j)], cfg, pg);
      if (cfg.normalize)
        kg = normalized_from_raw(kg, selfs[static_cast<std::size_t>(i)],
                                 selfs[static_cast<std::size_t>(j)]);
      kernel(i, j) = kg.value;
      kernel(j, i) = kg.value;
      for (Index p = 0; p < n_params; ++p) {
        dk[static_cast<std::size_t>(p)](i, j) = kg.gradient(p);
        dk[static_cast<std::size_t>(p)](j, i) = kg.gradient(p);
      }
    }
  }

  Factorization f = factorize(kernel, noise_var);
  const Eigen::MatrixXd alpha = f.llt.solve(targets);
  const Eigen::MatrixXd a_inv =
      f.llt.solve(Eigen::MatrixXd::Identity(n, n));
  const double n_out = static_cast<double>(targets.cols());

  LmlResult out;
  out.parameter_names = names;
  out.parameter_names.emplace_back("noise_var");
  out.value = -0.5 * (targets.array() * alpha.array()).sum() -
              0.5 * n_out * log_det_from_llt(f.llt) -
              0.5 * n_out * static_cast<double>(n) * std::log(2.0 * M_PI);
  out.gradient.resize(n_params + 1);
  // d/dtheta = 1/2 sum_c alpha_c^T dK alpha_c - n_out/2 tr(A^{-1} dK)
  for (Index p = 0; p < n_params; ++p) {
    const Eigen::MatrixXd& d = dk[static_cast<std::size_t>(p)];
    const double fit_term = 0.5 * (alpha.transpose() * d * alpha).trace();
    const double det_term = -0.5 * n_out * (a_inv.array() * d.array()).sum();
    out.gradient(p) = fit_term + det_term;
  }
  out.gradient(n_params) =
      0.5 * alpha.squaredNorm() - 0.5 * n_out * a_inv.trace();
  return out;
}

}  // namespace seqk
