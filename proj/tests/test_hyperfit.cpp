#include <doctest.h>

#include <cmath>

#include "seqk/hyperfit.hpp"
#include "seqk/rng.hpp"
#include "seqk/toy.hpp"

using namespace seqk;

namespace {

KernelConfig start_config(StructureKernelKind kind) {
  KernelConfig cfg;
  cfg.symbol.kind = SymbolKernelKind::rbf;
  cfg.symbol.sigma = 1.0;
  cfg.structure.kind = kind;
  cfg.structure.alpha = 4.0;
  cfg.structure.chv = 0.3;
  cfg.structure.cd = 0.3;
  cfg.normalize = true;
  return cfg;
}

Dataset small_toy() {
  SineCosineParams p;
  p.n_per_class = 4;
  p.len_min = 10;
  p.len_max = 14;
  p.noise_sd = 0.1;
  p.seed = 9;
  return gen_sine_cosine(p);
}

}  // namespace

TEST_CASE("zero budget returns the starting configuration with a status flag") {
  const auto data = small_toy();
  FitOptions opt;
  opt.budget = 0;
  const auto r = fit_hyperparameters(data.sequences, data.labels(),
                                     start_config(StructureKernelKind::path), opt);
  CHECK(r.status == "no_budget");
  CHECK(r.evaluations == 0);
  CHECK(r.config.structure.chv == 0.3);
  CHECK(r.config.structure.cd == 0.3);
}

TEST_CASE("a huge gradient tolerance means no move at all") {
  const auto data = small_toy();
  FitOptions opt;
  opt.budget = 50;
  opt.gtol = 1e12;
  const auto r = fit_hyperparameters(data.sequences, data.labels(),
                                     start_config(StructureKernelKind::exponential), opt);
  CHECK(r.status == "converged");
  CHECK(r.evaluations == 1);
  CHECK(r.config.structure.alpha == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("accepted steps never decrease the marginal likelihood") {
  const auto data = small_toy();
  FitOptions opt;
  opt.budget = 40;
  const auto r = fit_hyperparameters(data.sequences, data.labels(),
                                     start_config(StructureKernelKind::path), opt);
  REQUIRE(r.accepted_lml.size() >= 2);
  for (std::size_t k = 1; k < r.accepted_lml.size(); ++k)
    CHECK(r.accepted_lml[k] >= r.accepted_lml[k - 1]);
  CHECK(r.lml >= r.accepted_lml.front());
  CHECK(r.evaluations <= opt.budget);
}

TEST_CASE("fitting is deterministic") {
  const auto data = small_toy();
  FitOptions opt;
  opt.budget = 25;
  const auto a = fit_hyperparameters(data.sequences, data.labels(),
                                     start_config(StructureKernelKind::path), opt);
  const auto b = fit_hyperparameters(data.sequences, data.labels(),
                                     start_config(StructureKernelKind::path), opt);
  CHECK(a.lml == b.lml);
  CHECK(a.config.structure.chv == b.config.structure.chv);
  CHECK(a.config.structure.cd == b.config.structure.cd);
  CHECK(a.noise_var == b.noise_var);
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("restarting near a fitted point barely moves") {
  const auto data = small_toy();
  FitOptions opt;
  opt.budget = 80;
  opt.gtol = 1e-3;
  const auto first = fit_hyperparameters(data.sequences, data.labels(),
                                         start_config(StructureKernelKind::exponential), opt);
  const auto second = fit_hyperparameters(data.sequences, data.labels(), first.config, {
                                              .budget = 40,
                                              .gtol = 1e-3,
                                              .noise_var0 = first.noise_var,
                                          });
  CHECK(second.lml >= first.lml - 1e-8);
  CHECK(std::abs(std::log(second.config.symbol.sigma / first.config.symbol.sigma)) < 0.5);
}

TEST_CASE("invalid starting points are rejected") {
  const auto data = small_toy();
  KernelConfig cfg = start_config(StructureKernelKind::path);
  cfg.structure.chv = 0.0;  // log-space fitting needs strictly positive starts
  CHECK_THROWS_AS(fit_hyperparameters(data.sequences, data.labels(), cfg, {}), std::domain_error);
  KernelConfig nd = start_config(StructureKernelKind::factorial);
  CHECK_THROWS_AS(fit_hyperparameters(data.sequences, data.labels(), nd, {}),
                  std::invalid_argument);
}
