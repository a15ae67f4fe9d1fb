#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqk/sequence_kernel.hpp"
#include "seqk/structure.hpp"
#include "seqk/types.hpp"

namespace seqk {

/// Kernel value together with its gradient in the differentiable parameters,
/// ordered as gradient_parameter_names() reports.
struct KernelValueGradient {
  double value = 0.0;
  Eigen::VectorXd gradient;
};

inline void require_differentiable(const KernelConfig& cfg) {
  if (cfg.symbol.kind != SymbolKernelKind::rbf ||
      (cfg.structure.kind != StructureKernelKind::exponential &&
       cfg.structure.kind != StructureKernelKind::path))
    throw std::invalid_argument(
        "kernel gradients require an rbf symbol kernel with an exponential or path structure "
        "kernel");
}

inline std::vector<std::string> gradient_parameter_names(const KernelConfig& cfg) {
  require_differentiable(cfg);
  std::vector<std::string> names{"sigma"};
  if (cfg.structure.kind == StructureKernelKind::exponential)
    names.emplace_back("alpha");
  else {
    names.emplace_back("chv");
    names.emplace_back("cd");
  }
  return names;
}

/// Unnormalized kernel value and gradient. For the path structure a
/// precomputed gradient-table bundle may be passed to avoid rebuilding it
/// per pair; it must cover max(|s|, |t|).
inline KernelValueGradient kernel_value_gradient_raw(const Sequence& s, const Sequence& t,
                                                     const KernelConfig& cfg,
                                                     const PathStructureGradients* tables =
                                                         nullptr) {
  require_differentiable(cfg);
  validate(cfg.symbol);
  validate(cfg.structure);
  const bool is_path = cfg.structure.kind == StructureKernelKind::path;
  const int n_params = is_path ? 3 : 2;

  KernelValueGradient out;
  out.gradient = Eigen::VectorXd::Zero(n_params);
  if (s.empty() || t.empty()) return out;
  if (s.dim() != t.dim()) throw std::invalid_argument("sequence symbol dimensions differ");

  const Index side = std::max(s.length(), t.length());
  PathStructureGradients local;
  const PathStructureGradients* pg = nullptr;
  if (is_path) {
    if (tables != nullptr && tables->value.rows() >= side) {
      pg = tables;
    } else {
      local = path_structure_gradient_tables(side, cfg.structure.chv, cfg.structure.cd);
      pg = &local;
    }
  }

  const double sigma = cfg.symbol.sigma;
  const double alpha = cfg.structure.alpha;
  double value = 0.0;
  double dsigma = 0.0;
  double dalpha = 0.0;
  double dchv = 0.0;
  double dcd = 0.0;
  for (Index i = 0; i < s.length(); ++i) {
    const auto a = s.symbol(i);
    for (Index j = 0; j < t.length(); ++j) {
      const double r2 = (a - t.symbol(j)).squaredNorm();
      const double ksym = std::exp(-r2 / (2.0 * sigma * sigma));
      const double dksym = ksym * r2 / (sigma * sigma * sigma);
      if (is_path) {
        const double ks = pg->value(i, j);
        value += ksym * ks;
        dsigma += dksym * ks;
        dchv += ksym * pg->dchv(i, j);
        dcd += ksym * pg->dcd(i, j);
      } else {
        const double diff = static_cast<double>(i - j);
        const double ks = std::exp(-diff * diff / alpha);
        value += ksym * ks;
        dsigma += dksym * ks;
        dalpha += ksym * ks * diff * diff / (alpha * alpha);
      }
    }
  }
  out.value = value;
  out.gradient(0) = dsigma;
  if (is_path) {
    out.gradient(1) = dchv;
    out.gradient(2) = dcd;
  } else {
    out.gradient(1) = dalpha;
  }
  return out;
}

/// Quotient rule for the normalized kernel k(s,t) / sqrt(k(s,s) k(t,t))
/// given raw values and gradients of the three ingredients.
inline KernelValueGradient normalized_from_raw(const KernelValueGradient& st,
                                               const KernelValueGradient& ss,
                                               const KernelValueGradient& tt) {
  if (!(ss.value > 0.0) || !(tt.value > 0.0))
    throw std::runtime_error("normalized kernel is undefined when a self-similarity is <= 0");
  const double denom = std::sqrt(ss.value * tt.value);
  KernelValueGradient out;
  out.value = st.value / denom;
  out.gradient = st.gradient / denom -
                 0.5 * (st.value / (denom * ss.value * tt.value)) *
                     (ss.gradient * tt.value + ss.value * tt.gradient);
  return out;
}

/// Value and gradient of the kernel as configured (honors cfg.normalize).
inline KernelValueGradient kernel_value_gradient(const Sequence& s, const Sequence& t,
                                                 const KernelConfig& cfg,
                                                 const PathStructureGradients* tables = nullptr) {
  if (!cfg.normalize) return kernel_value_gradient_raw(s, t, cfg, tables);
  if (s.empty() || t.empty())
    throw std::runtime_error("normalized kernel is undefined for empty sequences");
  return normalized_from_raw(kernel_value_gradient_raw(s, t, cfg, tables),
                             kernel_value_gradient_raw(s, s, cfg, tables),
                             kernel_value_gradient_raw(t, t, cfg, tables));
}

/// Gradient of k(s,t) in the differentiable kernel parameters.
inline Eigen::VectorXd kernel_gradients(const Sequence& s, const Sequence& t,
                                        const KernelConfig& cfg,
                                        const StructureMatrix* /*unused*/ = nullptr) {
  return kernel_value_gradient(s, t, cfg).gradient;
}

}  // namespace seqk
