#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace seqk {

using Index = Eigen::Index;

/// A finite sequence of fixed-dimension real-valued symbols, stored
/// column-wise (dim rows, one column per symbol).
struct Sequence {
  Eigen::MatrixXd symbols;  // d x length
  std::string id;
  std::string label;  // empty = unlabeled

  Sequence() = default;
  Sequence(Eigen::MatrixXd syms, std::string seq_id = {}, std::string seq_label = {})
      : symbols(std::move(syms)), id(std::move(seq_id)), label(std::move(seq_label)) {}

  Index length() const { return symbols.cols(); }
  Index dim() const { return symbols.rows(); }
  bool empty() const { return symbols.cols() == 0; }

  auto symbol(Index i) const { return symbols.col(i); }
};

inline void check_finite(const Sequence& s) {
  if (!s.symbols.allFinite())
    throw std::invalid_argument("sequence '" + s.id + "' contains non-finite symbol values");
}

enum class SymbolKernelKind { rbf, linear, delta };
enum class StructureKernelKind { exponential, polynomial, factorial, path };

/// Which sequence-kernel family a configuration selects: the decomposable
/// symbol-times-structure sum, or the global-alignment baseline.
enum class KernelFamily { decomposable, global_alignment };

struct SymbolKernelParams {
  SymbolKernelKind kind = SymbolKernelKind::rbf;
  double sigma = 1.0;  // rbf bandwidth
};

struct StructureKernelParams {
  StructureKernelKind kind = StructureKernelKind::exponential;
  double alpha = 4.0;    // exponential
  double poly_c = 1.0;   // polynomial offset
  int poly_degree = 2;   // polynomial degree
  int fact_d = 0;        // factorial shift, may be negative
  double chv = 0.3;      // path horizontal/vertical weight
  double cd = 0.3;       // path diagonal weight
};

struct KernelConfig {
  KernelFamily family = KernelFamily::decomposable;
  SymbolKernelParams symbol;
  StructureKernelParams structure;
  bool normalize = true;
};

inline void validate(const SymbolKernelParams& p) {
  if (p.kind == SymbolKernelKind::rbf && !(std::isfinite(p.sigma) && p.sigma > 0.0))
    throw std::domain_error("rbf bandwidth must be finite and > 0");
}

inline void validate(const StructureKernelParams& p) {
  switch (p.kind) {
    case StructureKernelKind::exponential:
      if (!(std::isfinite(p.alpha) && p.alpha > 0.0))
        throw std::domain_error("exponential structure kernel requires alpha > 0");
      break;
    case StructureKernelKind::polynomial:
      if (!(std::isfinite(p.poly_c) && p.poly_c >= 0.0))
        throw std::domain_error("polynomial structure kernel requires c >= 0");
      if (p.poly_degree < 0)
        throw std::domain_error("polynomial structure kernel requires degree >= 0");
      break;
    case StructureKernelKind::factorial:
      break;
    case StructureKernelKind::path:
      if (!(std::isfinite(p.chv) && p.chv >= 0.0))
        throw std::domain_error("path structure kernel requires C_hv >= 0");
      if (!(std::isfinite(p.cd) && p.cd >= 0.0))
        throw std::domain_error("path structure kernel requires C_d >= 0");
      break;
  }
}

inline void validate(const KernelConfig& cfg) {
  validate(cfg.symbol);
  if (cfg.family == KernelFamily::decomposable) validate(cfg.structure);
  if (cfg.family == KernelFamily::global_alignment &&
      !(std::isfinite(cfg.symbol.sigma) && cfg.symbol.sigma > 0.0))
    throw std::domain_error("global-alignment kernel requires bandwidth sigma > 0");
}

/// Path weights with 2*C_hv + C_d > 1 make the structure values grow
/// geometrically with length; callers may want to surface this.
inline bool path_growth_warning(const StructureKernelParams& p) {
  return p.kind == StructureKernelKind::path && 2.0 * p.chv + p.cd > 1.0;
}

inline const char* to_string(SymbolKernelKind k) {
  switch (k) {
    case SymbolKernelKind::rbf: return "rbf";
    case SymbolKernelKind::linear: return "linear";
    case SymbolKernelKind::delta: return "delta";
  }
  return "?";
}

inline const char* to_string(StructureKernelKind k) {
  switch (k) {
    case StructureKernelKind::exponential: return "exponential";
    case StructureKernelKind::polynomial: return "polynomial";
    case StructureKernelKind::factorial: return "factorial";
    case StructureKernelKind::path: return "path";
  }
  return "?";
}

inline const char* to_string(KernelFamily f) {
  return f == KernelFamily::decomposable ? "decomposable" : "global_alignment";
}

}  // namespace seqk
