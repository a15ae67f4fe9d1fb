#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "seqk/structure.hpp"
#include "seqk/types.hpp"

namespace seqk {

/// Kernel between two individual symbols.
template <class DerivedA, class DerivedB>
double symbol_kernel(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                     const SymbolKernelParams& p) {
  if (a.size() != b.size()) throw std::invalid_argument("symbol dimensions differ");
  switch (p.kind) {
    case SymbolKernelKind::rbf:
      return std::exp(-(a - b).squaredNorm() / (2.0 * p.sigma * p.sigma));
    case SymbolKernelKind::linear:
      return a.dot(b);
    case SymbolKernelKind::delta:
      return (a.array() == b.array()).all() ? 1.0 : 0.0;
  }
  throw std::logic_error("unknown symbol kernel kind");
}

/// Matrix of pairwise symbol-kernel values, entry (i, j) = k_Sigma(s_i, t_j).
inline Eigen::MatrixXd symbol_gram(const Sequence& s, const Sequence& t,
                                   const SymbolKernelParams& p) {
  Eigen::MatrixXd m(s.length(), t.length());
  for (Index i = 0; i < s.length(); ++i)
    for (Index j = 0; j < t.length(); ++j) m(i, j) = symbol_kernel(s.symbol(i), t.symbol(j), p);
  return m;
}

inline bool params_equal(const StructureKernelParams& a, const StructureKernelParams& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case StructureKernelKind::exponential: return a.alpha == b.alpha;
    case StructureKernelKind::polynomial: return a.poly_c == b.poly_c && a.poly_degree == b.poly_degree;
    case StructureKernelKind::factorial: return a.fact_d == b.fact_d;
    case StructureKernelKind::path: return a.chv == b.chv && a.cd == b.cd;
  }
  return false;
}

namespace detail {

// Canonical argument orientation: evaluating k(s,t) and k(t,s) must
// accumulate the same terms in the same order, so the sums agree bit for
// bit. Orders by length, then lexicographically by symbol values.
inline bool swap_for_canonical_order(const Sequence& s, const Sequence& t) {
  if (s.length() != t.length()) return s.length() < t.length();
  for (Index j = 0; j < s.length(); ++j) {
    for (Index r = 0; r < s.dim(); ++r) {
      const double a = s.symbols(r, j);
      const double b = t.symbols(r, j);
      if (a != b) return a < b;
    }
  }
  return false;
}

inline double decomposable_raw(const Sequence& s, const Sequence& t, const KernelConfig& cfg,
                               const StructureMatrix* m) {
  if (s.empty() || t.empty()) return 0.0;
  if (s.dim() != t.dim()) throw std::invalid_argument("sequence symbol dimensions differ");

  const Sequence* first = &s;
  const Sequence* second = &t;
  if (swap_for_canonical_order(s, t)) std::swap(first, second);

  const Index n = first->length();
  const Index mlen = second->length();
  const bool use_table = m != nullptr && m->lmax >= std::max(n, mlen);
  if (m != nullptr && !params_equal(m->params, cfg.structure))
    throw std::invalid_argument("structure matrix was built with different parameters");

  StructureMatrix local;
  const StructureMatrix* table = nullptr;
  if (use_table) {
    table = m;
  } else if (cfg.structure.kind == StructureKernelKind::path) {
    // one local table instead of per-cell recurrences
    local = build_structure_matrix(cfg.structure, std::max(n, mlen));
    table = &local;
  }

  double acc = 0.0;
  for (Index i = 0; i < n; ++i) {
    const auto a = first->symbol(i);
    for (Index j = 0; j < mlen; ++j) {
      const double ks = table != nullptr ? table->at(i + 1, j + 1)
                                         : structure_kernel(i + 1, j + 1, cfg.structure);
      acc += symbol_kernel(a, second->symbol(j), cfg.symbol) * ks;
    }
  }
  return acc;
}

}  // namespace detail

/// Decomposable sequence kernel: sum over all position pairs of
/// k_Sigma(s_i, t_j) * k_S(i, j). Either sequence empty gives 0. With
/// cfg.normalize the value is divided by sqrt(k(s,s) k(t,t)).
inline double sequence_kernel(const Sequence& s, const Sequence& t, const KernelConfig& cfg,
                              const StructureMatrix* m = nullptr) {
  validate(cfg.symbol);
  validate(cfg.structure);
  if (!cfg.normalize) return detail::decomposable_raw(s, t, cfg, m);
  if (s.empty() || t.empty())
    throw std::runtime_error("normalized kernel is undefined for empty sequences");
  const double kst = detail::decomposable_raw(s, t, cfg, m);
  const double kss = detail::decomposable_raw(s, s, cfg, m);
  const double ktt = detail::decomposable_raw(t, t, cfg, m);
  if (!(kss > 0.0) || !(ktt > 0.0))
    throw std::runtime_error("normalized kernel is undefined when a self-similarity is <= 0");
  return kst / std::sqrt(kss * ktt);
}

/// Same value as sequence_kernel, computed as trace(K_Sigma^T K_S) with the
/// structure block sliced from a precomputed matrix.
inline double sequence_kernel_trace(const Sequence& s, const Sequence& t, const KernelConfig& cfg,
                                    const StructureMatrix& m) {
  validate(cfg.symbol);
  validate(cfg.structure);
  auto raw = [&](const Sequence& a, const Sequence& b) -> double {
    if (a.empty() || b.empty()) return 0.0;
    if (a.length() > m.lmax || b.length() > m.lmax)
      throw std::invalid_argument("structure matrix smaller than sequence length");
    const Eigen::MatrixXd ksig = symbol_gram(a, b, cfg.symbol);
    return ksig.cwiseProduct(m.values.topLeftCorner(a.length(), b.length())).sum();
  };
  if (!cfg.normalize) return raw(s, t);
  if (s.empty() || t.empty())
    throw std::runtime_error("normalized kernel is undefined for empty sequences");
  const double kss = raw(s, s);
  const double ktt = raw(t, t);
  if (!(kss > 0.0) || !(ktt > 0.0))
    throw std::runtime_error("normalized kernel is undefined when a self-similarity is <= 0");
  return raw(s, t) / std::sqrt(kss * ktt);
}

/// Path kernel evaluated by the four-term suffix recursion
///   k_p(s,t) = k_Sigma(s_1,t_1) + C_hv k_p(s_2:,t) + C_hv k_p(s,t_2:) + C_d k_p(s_2:,t_2:)
/// over a memoized |s| x |t| table of suffix pairs.
inline double path_kernel_recursive(const Sequence& s, const Sequence& t,
                                    const KernelConfig& cfg) {
  if (cfg.structure.kind != StructureKernelKind::path)
    throw std::invalid_argument("path_kernel_recursive requires a path structure configuration");
  validate(cfg.symbol);
  validate(cfg.structure);

  auto raw = [&](const Sequence& a, const Sequence& b) -> double {
    if (a.empty() || b.empty()) return 0.0;
    if (a.dim() != b.dim()) throw std::invalid_argument("sequence symbol dimensions differ");
    const Index n = a.length();
    const Index m = b.length();
    const double chv = cfg.structure.chv;
    const double cd = cfg.structure.cd;
    Eigen::MatrixXd table = Eigen::MatrixXd::Zero(n + 1, m + 1);
    for (Index i = n - 1; i >= 0; --i) {
      const auto ai = a.symbol(i);
      for (Index j = m - 1; j >= 0; --j) {
        table(i, j) = symbol_kernel(ai, b.symbol(j), cfg.symbol) +
                      chv * (table(i + 1, j) + table(i, j + 1)) + cd * table(i + 1, j + 1);
      }
    }
    return table(0, 0);
  };

  if (!cfg.normalize) return raw(s, t);
  if (s.empty() || t.empty())
    throw std::runtime_error("normalized kernel is undefined for empty sequences");
  const double kss = raw(s, s);
  const double ktt = raw(t, t);
  if (!(kss > 0.0) || !(ktt > 0.0))
    throw std::runtime_error("normalized kernel is undefined when a self-similarity is <= 0");
  return raw(s, t) / std::sqrt(kss * ktt);
}

}  // namespace seqk
