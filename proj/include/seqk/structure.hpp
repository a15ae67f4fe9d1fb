#pragma once

#include <Eigen/Dense>

#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "seqk/types.hpp"

namespace seqk {

namespace telemetry {

/// Counts individual structure-kernel value computations (one per matrix
/// cell for table builds). Lets callers verify that Gram construction
/// precomputes the structure matrix instead of re-evaluating per pair.
inline std::atomic<std::uint64_t> structure_evals{0};

inline void reset_structure_evals() { structure_evals.store(0, std::memory_order_relaxed); }
inline std::uint64_t structure_eval_count() {
  return structure_evals.load(std::memory_order_relaxed);
}
inline void count_structure_evals(std::uint64_t n) {
  structure_evals.fetch_add(n, std::memory_order_relaxed);
}

}  // namespace telemetry

inline constexpr std::uint64_t factorial_table[21] = {
    1ULL,
    1ULL,
    2ULL,
    6ULL,
    24ULL,
    120ULL,
    720ULL,
    5040ULL,
    40320ULL,
    362880ULL,
    3628800ULL,
    39916800ULL,
    479001600ULL,
    6227020800ULL,
    87178291200ULL,
    1307674368000ULL,
    20922789888000ULL,
    355687428096000ULL,
    6402373705728000ULL,
    121645100408832000ULL,
    2432902008176640000ULL};

/// n! as a double: exact 64-bit table through 20!, log-gamma beyond.
inline double factorial_as_double(long long n) {
  if (n < 0) throw std::domain_error("factorial of negative integer");
  if (n <= 20) return static_cast<double>(factorial_table[n]);
  return std::exp(std::lgamma(static_cast<double>(n) + 1.0));
}

/// Factorial kernel (x + x' - d)! on X_d = { x : 2x >= d }.
inline double factorial_kernel(long long x, long long y, long long d) {
  if (2 * x < d || 2 * y < d)
    throw std::domain_error("factorial kernel arguments must satisfy x >= d/2");
  return factorial_as_double(x + y - d);
}

inline double ipow(double base, int exponent) {
  double r = 1.0;
  for (int k = 0; k < exponent; ++k) r *= base;
  return r;
}

/// Structure values k_Gamma(i, j) of the path kernel for 1 <= i, j <= lmax,
/// filled by the weighted-lattice recurrence
///   k_Gamma(i,j) = C_hv * (k_Gamma(i-1,j) + k_Gamma(i,j-1)) + C_d * k_Gamma(i-1,j-1)
/// with zero boundary and k_Gamma(1,1) = 1. Entry (i,j) lives at (i-1, j-1).
/// Works for any ring-like scalar (double, integers, exact rationals).
template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> path_structure_table(Index lmax,
                                                                           const Scalar& chv,
                                                                           const Scalar& cd) {
  if (lmax < 1) throw std::domain_error("path structure table needs lmax >= 1");
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> table(lmax, lmax);
  const Scalar zero(0);
  for (Index i = 0; i < lmax; ++i) {
    for (Index j = 0; j < lmax; ++j) {
      if (i == 0 && j == 0) {
        table(0, 0) = Scalar(1);
        continue;
      }
      const Scalar& up = i > 0 ? table(i - 1, j) : zero;
      const Scalar& left = j > 0 ? table(i, j - 1) : zero;
      const Scalar& diag = (i > 0 && j > 0) ? table(i - 1, j - 1) : zero;
      table(i, j) = chv * (up + left) + cd * diag;
    }
  }
  telemetry::count_structure_evals(static_cast<std::uint64_t>(lmax) *
                                   static_cast<std::uint64_t>(lmax));
  return table;
}

/// Scalar structure-kernel value at 1-based positions (i, j).
inline double structure_kernel(Index i, Index j, const StructureKernelParams& p) {
  if (i < 1 || j < 1) throw std::domain_error("structure kernel positions start at 1");
  switch (p.kind) {
    case StructureKernelKind::exponential: {
      telemetry::count_structure_evals(1);
      const double diff = static_cast<double>(i - j);
      return std::exp(-diff * diff / p.alpha);
    }
    case StructureKernelKind::polynomial:
      telemetry::count_structure_evals(1);
      return ipow(static_cast<double>(i) * static_cast<double>(j) + p.poly_c, p.poly_degree);
    case StructureKernelKind::factorial:
      telemetry::count_structure_evals(1);
      return factorial_kernel(i, j, p.fact_d);
    case StructureKernelKind::path: {
      const Index side = std::max(i, j);
      return path_structure_table<double>(side, p.chv, p.cd)(i - 1, j - 1);
    }
  }
  throw std::logic_error("unknown structure kernel kind");
}

/// Row-major dense matrix; kernel accumulation loops scan structure values
/// row by row, so this layout keeps them contiguous.
using RowMatrixXd = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Precomputed K_S over all position pairs up to a maximum sequence length.
struct StructureMatrix {
  RowMatrixXd values;  // values(i-1, j-1) = k_S(i, j)
  StructureKernelParams params;
  Index lmax = 0;

  double at(Index i, Index j) const { return values(i - 1, j - 1); }
};

inline StructureMatrix build_structure_matrix(const StructureKernelParams& p, Index lmax) {
  validate(p);
  if (lmax < 1) throw std::domain_error("structure matrix needs lmax >= 1");
  StructureMatrix m;
  m.params = p;
  m.lmax = lmax;
  if (p.kind == StructureKernelKind::path) {
    m.values = path_structure_table<double>(lmax, p.chv, p.cd);
    return m;
  }
  m.values.resize(lmax, lmax);
  for (Index i = 0; i < lmax; ++i) {
    for (Index j = i; j < lmax; ++j) {
      m.values(i, j) = structure_kernel(i + 1, j + 1, p);
      m.values(j, i) = m.values(i, j);
    }
  }
  return m;
}

/// Value table of k_Gamma together with its derivatives in C_hv and C_d,
/// obtained by differentiating the lattice recurrence.
struct PathStructureGradients {
  Eigen::MatrixXd value;
  Eigen::MatrixXd dchv;
  Eigen::MatrixXd dcd;
};

inline PathStructureGradients path_structure_gradient_tables(Index lmax, double chv, double cd) {
  if (lmax < 1) throw std::domain_error("path structure table needs lmax >= 1");
  if (chv < 0.0 || cd < 0.0) throw std::domain_error("path weights must be >= 0");
  PathStructureGradients g;
  g.value.setZero(lmax, lmax);
  g.dchv.setZero(lmax, lmax);
  g.dcd.setZero(lmax, lmax);
  auto cell = [](const Eigen::MatrixXd& m, Index i, Index j) {
    return (i >= 0 && j >= 0) ? m(i, j) : 0.0;
  };
  for (Index i = 0; i < lmax; ++i) {
    for (Index j = 0; j < lmax; ++j) {
      if (i == 0 && j == 0) {
        g.value(0, 0) = 1.0;  // seed is a constant, derivatives stay 0
        continue;
      }
      const double v_up = cell(g.value, i - 1, j);
      const double v_left = cell(g.value, i, j - 1);
      const double v_diag = cell(g.value, i - 1, j - 1);
      g.value(i, j) = chv * (v_up + v_left) + cd * v_diag;
      g.dchv(i, j) = (v_up + v_left) + chv * (cell(g.dchv, i - 1, j) + cell(g.dchv, i, j - 1)) +
                     cd * cell(g.dchv, i - 1, j - 1);
      g.dcd(i, j) = chv * (cell(g.dcd, i - 1, j) + cell(g.dcd, i, j - 1)) + v_diag +
                    cd * cell(g.dcd, i - 1, j - 1);
    }
  }
  telemetry::count_structure_evals(static_cast<std::uint64_t>(lmax) *
                                   static_cast<std::uint64_t>(lmax));
  return g;
}

}  // namespace seqk
