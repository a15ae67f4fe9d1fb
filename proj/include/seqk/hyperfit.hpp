#pragma once

#include <string>
#include <vector>

#include "seqk/gp.hpp"
#include "seqk/types.hpp"

namespace seqk {

struct FitOptions {
  int budget = 60;       // maximum log-marginal-likelihood evaluations
  double gtol = 1e-5;    // sup-norm stop on the log-space gradient
  double noise_var0 = 0.1;
  double initial_step = 1.0;
};

struct FitResult {
  KernelConfig config;      // best-seen parameters
  double noise_var = 0.1;
  double lml = 0.0;         // log marginal likelihood at the best point
  std::vector<double> accepted_lml;  // nondecreasing trace of accepted iterates
  int evaluations = 0;
  std::string status;  // "converged" | "budget_exhausted" | "stalled" | "no_budget"
};

/// Maximizes the GP log marginal likelihood over the differentiable kernel
/// parameters and the noise variance by gradient ascent in log-parameter
/// space with backtracking line search. Deterministic given cfg0.
FitResult fit_hyperparameters(const std::vector<Sequence>& data,
                              const std::vector<std::string>& labels, const KernelConfig& cfg0,
                              const FitOptions& options = {});

}  // namespace seqk
