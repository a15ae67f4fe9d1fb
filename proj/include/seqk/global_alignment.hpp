#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "seqk/types.hpp"

namespace seqk {

namespace detail {

inline double log_sum_exp3(double a, double b, double c) {
  const double m = std::max(a, std::max(b, c));
  if (m == -std::numeric_limits<double>::infinity()) return m;
  return m + std::log(std::exp(a - m) + std::exp(b - m) + std::exp(c - m));
}

}  // namespace detail

/// log of the global-alignment kernel value G(|s|,|t|), with the product-sum
/// recursion G(i,j) = kappa(s_i,t_j) (G(i-1,j) + G(i,j-1) + G(i-1,j-1)) run
/// in the log domain. Local similarity kappa = e / (2 - e) with
/// e = exp(-||a-b||^2 / (2 sigma^2)).
inline double global_alignment_log(const Sequence& s, const Sequence& t, double sigma) {
  if (s.empty() || t.empty())
    throw std::domain_error("global-alignment kernel requires nonempty sequences");
  if (s.dim() != t.dim()) throw std::invalid_argument("sequence symbol dimensions differ");
  if (!(sigma > 0.0)) throw std::domain_error("global-alignment bandwidth must be > 0");

  const Index n = s.length();
  const Index m = t.length();
  const double neg_inf = -std::numeric_limits<double>::infinity();
  const double inv = 1.0 / (2.0 * sigma * sigma);

  std::vector<double> prev(static_cast<std::size_t>(m) + 1, neg_inf);
  std::vector<double> cur(static_cast<std::size_t>(m) + 1, neg_inf);
  prev[0] = 0.0;  // G(0,0) = 1
  for (Index i = 1; i <= n; ++i) {
    cur[0] = neg_inf;
    const auto a = s.symbol(i - 1);
    for (Index j = 1; j <= m; ++j) {
      const double u = -(a - t.symbol(j - 1)).squaredNorm() * inv;
      const double log_kappa = u - std::log(2.0 - std::exp(u));
      cur[j] = log_kappa + detail::log_sum_exp3(prev[j], cur[j - 1], prev[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[static_cast<std::size_t>(m)];
}

/// Global-alignment kernel in linear scale. May underflow to 0 for very long
/// sequences; prefer global_alignment_log plus log-domain normalization then.
inline double global_alignment_kernel(const Sequence& s, const Sequence& t, double sigma) {
  return std::exp(global_alignment_log(s, t, sigma));
}

}  // namespace seqk
