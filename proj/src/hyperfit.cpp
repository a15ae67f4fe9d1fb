#include "seqk/hyperfit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "seqk/gradients.hpp"

namespace seqk {

namespace {

// log-space search box; the noise floor keeps the likelihood away from the
// zero-noise interpolation cliff
constexpr double kLogLo = -13.815510557964274;       // log 1e-6
constexpr double kLogHi = 13.815510557964274;        // log 1e6
constexpr double kLogNoiseLo = -9.210340371976182;   // log 1e-4
constexpr double kLogNoiseHi = 4.605170185988092;    // log 1e2

Eigen::VectorXd pack(const KernelConfig& cfg, double noise_var) {
  const bool path = cfg.structure.kind == StructureKernelKind::path;
  Eigen::VectorXd u(path ? 4 : 3);
  u(0) = std::log(cfg.symbol.sigma);
  if (path) {
    u(1) = std::log(cfg.structure.chv);
    u(2) = std::log(cfg.structure.cd);
    u(3) = std::log(noise_var);
  } else {
    u(1) = std::log(cfg.structure.alpha);
    u(2) = std::log(noise_var);
  }
  return u;
}

void unpack(const Eigen::VectorXd& u, KernelConfig& cfg, double& noise_var) {
  const bool path = cfg.structure.kind == StructureKernelKind::path;
  cfg.symbol.sigma = std::exp(u(0));
  if (path) {
    cfg.structure.chv = std::exp(u(1));
    cfg.structure.cd = std::exp(u(2));
    noise_var = std::exp(u(3));
  } else {
    cfg.structure.alpha = std::exp(u(1));
    noise_var = std::exp(u(2));
  }
}

Eigen::VectorXd clamp_log(Eigen::VectorXd u) {
  for (Index i = 0; i + 1 < u.size(); ++i) u(i) = std::clamp(u(i), kLogLo, kLogHi);
  u(u.size() - 1) = std::clamp(u(u.size() - 1), kLogNoiseLo, kLogNoiseHi);  // noise last
  return u;
}

}  // namespace

FitResult fit_hyperparameters(const std::vector<Sequence>& data,
                              const std::vector<std::string>& labels, const KernelConfig& cfg0,
                              const FitOptions& options) {
  require_differentiable(cfg0);
  validate(cfg0);
  if (!(options.noise_var0 > 0.0)) throw std::domain_error("initial noise variance must be > 0");
  if (cfg0.structure.kind == StructureKernelKind::path &&
      (!(cfg0.structure.chv > 0.0) || !(cfg0.structure.cd > 0.0)))
    throw std::domain_error("path parameters must start strictly positive for fitting");
  if (static_cast<Index>(labels.size()) != static_cast<Index>(data.size()))
    throw std::invalid_argument("label count does not match dataset size");

  FitResult result;
  result.config = cfg0;
  result.noise_var = options.noise_var0;
  if (options.budget <= 0) {
    result.status = "no_budget";
    return result;
  }

  const Eigen::MatrixXd targets = one_hot_targets(labels).y;

  // value and log-space gradient (chain rule d/du = theta d/dtheta)
  auto evaluate = [&](const Eigen::VectorXd& u, double& value, Eigen::VectorXd& grad_u) {
    KernelConfig cfg = cfg0;
    double noise = 0.0;
    unpack(u, cfg, noise);
    const LmlResult lml = lml_value_gradient(data, cfg, targets, noise);
    value = lml.value;
    grad_u = lml.gradient.cwiseProduct(u.array().exp().matrix());
  };

  Eigen::VectorXd u = clamp_log(pack(cfg0, options.noise_var0));
  double f = 0.0;
  Eigen::VectorXd g;
  evaluate(u, f, g);
  result.evaluations = 1;
  result.accepted_lml.push_back(f);

  Eigen::VectorXd best_u = u;
  double best_f = f;

  bool converged = false;
  bool stalled = false;
  while (result.evaluations < options.budget) {
    if (g.cwiseAbs().maxCoeff() < options.gtol) {
      converged = true;
      break;
    }
    double step = options.initial_step;
    bool accepted = false;
    const double slope = g.squaredNorm();
    while (result.evaluations < options.budget && step > 1e-12) {
      const Eigen::VectorXd u_trial = clamp_log(u + step * g);
      double f_trial = 0.0;
      Eigen::VectorXd g_trial;
      evaluate(u_trial, f_trial, g_trial);
      ++result.evaluations;
      if (f_trial > best_f) {
        best_f = f_trial;
        best_u = u_trial;
      }
      if (f_trial > f + 1e-4 * step * slope) {
        u = u_trial;
        f = f_trial;
        g = std::move(g_trial);
        result.accepted_lml.push_back(f);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      stalled = result.evaluations < options.budget;
      break;
    }
  }

  unpack(best_u, result.config, result.noise_var);
  result.lml = best_f;
  result.status = converged ? "converged" : (stalled ? "stalled" : "budget_exhausted");
  return result;
}

}  // namespace seqk
