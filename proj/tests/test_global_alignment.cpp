#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "seqk/global_alignment.hpp"
#include "seqk/gram.hpp"
#include "seqk/rng.hpp"

using namespace seqk;

namespace {

Sequence random_sequence(Rng& rng, Index length, Index dim) {
  Eigen::MatrixXd m(dim, length);
  for (Index j = 0; j < length; ++j)
    for (Index r = 0; r < dim; ++r) m(r, j) = rng.uniform(-1.5, 1.5);
  return Sequence(std::move(m), "g");
}

}  // namespace

TEST_CASE("single-cell values equal the local similarity") {
  Eigen::MatrixXd ma(1, 1), mb(1, 1);
  ma(0, 0) = 0.4;
  mb(0, 0) = -0.9;
  const Sequence a(ma, "a"), b(mb, "b");
  CHECK(global_alignment_kernel(a, a, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  const double kappa = oracles::ga_kappa(a.symbols.col(0), b.symbols.col(0), 1.0);
  CHECK(global_alignment_kernel(a, b, 1.0) == doctest::Approx(kappa).epsilon(1e-12));
}

TEST_CASE("2x2 value sums the three monotone alignments") {
  Rng rng(41);
  for (int rep = 0; rep < 10; ++rep) {
    const Sequence s = random_sequence(rng, 2, 2);
    const Sequence t = random_sequence(rng, 2, 2);
    const double expected = oracles::ga_bruteforce(s, t, 0.8);
    CHECK(global_alignment_kernel(s, t, 0.8) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("log-domain DP matches brute-force path enumeration") {
  Rng rng(43);
  for (int rep = 0; rep < 20; ++rep) {
    const Index ls = 1 + static_cast<Index>(rng.uniform_int(0, 4));
    const Index lt = 1 + static_cast<Index>(rng.uniform_int(0, 4));
    const Sequence s = random_sequence(rng, ls, 2);
    const Sequence t = random_sequence(rng, lt, 2);
    const double sigma = rng.uniform(0.4, 2.0);
    const double expected = oracles::ga_bruteforce(s, t, sigma);
    CHECK(global_alignment_kernel(s, t, sigma) == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("symmetric and strictly positive") {
  Rng rng(47);
  for (int rep = 0; rep < 20; ++rep) {
    const Index ls = 1 + static_cast<Index>(rng.uniform_int(0, 11));
    const Index lt = 1 + static_cast<Index>(rng.uniform_int(0, 11));
    const Sequence s = random_sequence(rng, ls, 2);
    const Sequence t = random_sequence(rng, lt, 2);
    const double st = global_alignment_log(s, t, 1.0);
    const double ts = global_alignment_log(t, s, 1.0);
    CHECK(st == ts);
    CHECK(std::isfinite(st));
    CHECK(global_alignment_kernel(s, t, 1.0) > 0.0);
  }
}

TEST_CASE("long sequences stay finite in the log domain") {
  Rng rng(53);
  const Sequence s = random_sequence(rng, 400, 1);
  const Sequence t = random_sequence(rng, 380, 1);
  const double log_v = global_alignment_log(s, t, 0.5);
  CHECK(std::isfinite(log_v));
}

TEST_CASE("normalized GA values have unit self-similarity") {
  Rng rng(59);
  KernelConfig cfg;
  cfg.family = KernelFamily::global_alignment;
  cfg.symbol.kind = SymbolKernelKind::rbf;
  cfg.symbol.sigma = 0.9;
  cfg.normalize = true;
  for (int rep = 0; rep < 10; ++rep) {
    const Sequence s = random_sequence(rng, 1 + static_cast<Index>(rng.uniform_int(0, 30)), 2);
    const Sequence t = random_sequence(rng, 1 + static_cast<Index>(rng.uniform_int(0, 30)), 2);
    CHECK(kernel_value(s, s, cfg) == doctest::Approx(1.0).epsilon(1e-12));
    const double v = kernel_value(s, t, cfg);
    CHECK(v > 0.0);
    CHECK(v <= 1.0 + 1e-12);
  }
}

TEST_CASE("empty input is a domain error") {
  const Sequence empty{Eigen::MatrixXd(1, 0), "e"};
  Eigen::MatrixXd ma(1, 1);
  ma(0, 0) = 1.0;
  const Sequence a(ma, "a");
  CHECK_THROWS_AS(global_alignment_kernel(empty, a, 1.0), std::domain_error);
  CHECK_THROWS_AS(global_alignment_kernel(a, empty, 1.0), std::domain_error);
}
