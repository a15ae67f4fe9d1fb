#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "seqk/rng.hpp"
#include "seqk/sequence_kernel.hpp"
#include "seqk/structure.hpp"

using namespace seqk;

namespace {

Sequence random_sequence(Rng& rng, Index length, Index dim, const std::string& id = "s") {
  Eigen::MatrixXd m(dim, length);
  for (Index j = 0; j < length; ++j)
    for (Index r = 0; r < dim; ++r) m(r, j) = rng.uniform(-2.0, 2.0);
  return Sequence(std::move(m), id);
}

KernelConfig path_config(double chv, double cd, double sigma = 1.0, bool normalize = false) {
  KernelConfig cfg;
  cfg.symbol.kind = SymbolKernelKind::rbf;
  cfg.symbol.sigma = sigma;
  cfg.structure.kind = StructureKernelKind::path;
  cfg.structure.chv = chv;
  cfg.structure.cd = cd;
  cfg.normalize = normalize;
  return cfg;
}

Sequence single(double v) {
  Eigen::MatrixXd m(1, 1);
  m(0, 0) = v;
  return Sequence(std::move(m), "x");
}

}  // namespace

TEST_CASE("symbol kernel basics") {
  SymbolKernelParams rbf{SymbolKernelKind::rbf, 1.0};
  Eigen::Vector2d a(1.0, 2.0), b(1.0, 3.0);
  CHECK(symbol_kernel(a, a, rbf) == 1.0);
  CHECK(symbol_kernel(Eigen::VectorXd::Constant(1, 0.0), Eigen::VectorXd::Constant(1, 2.0), rbf) ==
        doctest::Approx(std::exp(-2.0)).epsilon(1e-12));

  SymbolKernelParams delta{SymbolKernelKind::delta, 1.0};
  CHECK(symbol_kernel(a, b, delta) == 0.0);
  CHECK(symbol_kernel(a, a, delta) == 1.0);

  SymbolKernelParams lin{SymbolKernelKind::linear, 1.0};
  CHECK(symbol_kernel(a, b, lin) == doctest::Approx(7.0));

  Eigen::VectorXd wide(3), narrow(2);
  wide << 1.0, 2.0, 3.0;
  narrow << 1.0, 2.0;
  CHECK_THROWS_AS(symbol_kernel(narrow, wide, rbf), std::invalid_argument);
}

TEST_CASE("single-symbol sequences reduce to one term") {
  Rng rng(3);
  for (int rep = 0; rep < 10; ++rep) {
    const Sequence s = random_sequence(rng, 1, 2, "a");
    const Sequence t = random_sequence(rng, 1, 2, "b");
    KernelConfig cfg = path_config(rng.uniform(0.0, 0.5), rng.uniform(0.0, 0.5));
    const double expected = symbol_kernel(s.symbol(0), t.symbol(0), cfg.symbol);  // k_S(1,1)=1
    CHECK(sequence_kernel(s, t, cfg) == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("empty sequences yield zero, or an error when normalizing") {
  KernelConfig cfg = path_config(0.3, 0.3);
  const Sequence empty{Eigen::MatrixXd(1, 0), "e"};
  const Sequence s = single(1.5);
  CHECK(sequence_kernel(empty, s, cfg) == 0.0);
  CHECK(sequence_kernel(s, empty, cfg) == 0.0);
  CHECK(sequence_kernel(empty, empty, cfg) == 0.0);
  cfg.normalize = true;
  CHECK_THROWS_AS(sequence_kernel(empty, s, cfg), std::runtime_error);
}

TEST_CASE("length-2 hand expansion of the decomposed path kernel") {
  Rng rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    const double chv = rng.uniform(0.0, 0.6);
    const double cd = rng.uniform(0.0, 0.6);
    KernelConfig cfg = path_config(chv, cd, rng.uniform(0.5, 2.0));
    const Sequence s = random_sequence(rng, 2, 2, "s");
    const Sequence t = random_sequence(rng, 2, 2, "t");
    auto k = [&](Index i, Index j) { return symbol_kernel(s.symbol(i), t.symbol(j), cfg.symbol); };
    const double expected = k(0, 0) + chv * (k(1, 0) + k(0, 1)) + (2 * chv * chv + cd) * k(1, 1);
    CHECK(sequence_kernel(s, t, cfg) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("recursive path kernel base cases") {
  KernelConfig cfg = path_config(0.4, 0.2);
  const Sequence empty{Eigen::MatrixXd(1, 0), "e"};
  CHECK(path_kernel_recursive(empty, empty, cfg) == 0.0);
  const Sequence a = single(0.7);
  const Sequence b = single(-0.4);
  CHECK(path_kernel_recursive(a, b, cfg) ==
        doctest::Approx(symbol_kernel(a.symbol(0), b.symbol(0), cfg.symbol)).epsilon(1e-14));
}

TEST_CASE("recursion equals decomposed evaluation on random pairs") {
  Rng rng(11);
  for (int rep = 0; rep < 60; ++rep) {
    const Index ls = 1 + static_cast<Index>(rng.uniform_int(0, 7));
    const Index lt = 1 + static_cast<Index>(rng.uniform_int(0, 7));
    const Index d = 1 + static_cast<Index>(rng.uniform_int(0, 2));
    KernelConfig cfg = path_config(rng.uniform(0.0, 0.5), rng.uniform(0.0, 0.5));
    const Sequence s = random_sequence(rng, ls, d, "s");
    const Sequence t = random_sequence(rng, lt, d, "t");
    const double recursive = path_kernel_recursive(s, t, cfg);
    const double decomposed = sequence_kernel(s, t, cfg);
    CHECK(std::abs(recursive - decomposed) / std::max(1.0, std::abs(decomposed)) < 1e-9);
  }
}

TEST_CASE("kernel symmetry is bit-exact") {
  Rng rng(13);
  for (int rep = 0; rep < 40; ++rep) {
    const Index ls = 1 + static_cast<Index>(rng.uniform_int(0, 9));
    const Index lt = 1 + static_cast<Index>(rng.uniform_int(0, 9));
    KernelConfig cfg = path_config(rng.uniform(0.0, 0.5), rng.uniform(0.0, 0.5));
    if (rep % 2 == 0) {
      cfg.structure.kind = StructureKernelKind::exponential;
      cfg.structure.alpha = rng.uniform(0.5, 8.0);
    }
    const Sequence s = random_sequence(rng, ls, 2, "s");
    const Sequence t = random_sequence(rng, lt, 2, "t");
    CHECK(sequence_kernel(s, t, cfg) == sequence_kernel(t, s, cfg));
  }
}

TEST_CASE("double sum equals the trace form") {
  Rng rng(17);
  for (int rep = 0; rep < 30; ++rep) {
    const Index ls = 1 + static_cast<Index>(rng.uniform_int(0, 9));
    const Index lt = 1 + static_cast<Index>(rng.uniform_int(0, 9));
    KernelConfig cfg = path_config(rng.uniform(0.0, 0.5), rng.uniform(0.0, 0.5));
    const Sequence s = random_sequence(rng, ls, 3, "s");
    const Sequence t = random_sequence(rng, lt, 3, "t");
    const auto m = build_structure_matrix(cfg.structure, std::max(ls, lt));
    const double direct = sequence_kernel(s, t, cfg, &m);
    const double trace = sequence_kernel_trace(s, t, cfg, m);
    CHECK(std::abs(direct - trace) <= 1e-12 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("normalization gives unit self-similarity") {
  Rng rng(19);
  for (int rep = 0; rep < 20; ++rep) {
    const Index ls = 1 + static_cast<Index>(rng.uniform_int(0, 11));
    KernelConfig cfg = path_config(rng.uniform(0.01, 0.5), rng.uniform(0.01, 0.5));
    cfg.normalize = true;
    const Sequence s = random_sequence(rng, ls, 2, "s");
    CHECK(sequence_kernel(s, s, cfg) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("undersized structure matrix falls back to on-the-fly evaluation") {
  Rng rng(23);
  KernelConfig cfg = path_config(0.3, 0.4);
  const Sequence s = random_sequence(rng, 6, 2, "s");
  const Sequence t = random_sequence(rng, 9, 2, "t");
  const auto small = build_structure_matrix(cfg.structure, 4);
  const auto big = build_structure_matrix(cfg.structure, 16);
  CHECK(sequence_kernel(s, t, cfg, &small) ==
        doctest::Approx(sequence_kernel(s, t, cfg, &big)).epsilon(1e-14));
}

TEST_CASE("mismatched structure-matrix parameters are rejected") {
  Rng rng(29);
  KernelConfig cfg = path_config(0.3, 0.4);
  const Sequence s = random_sequence(rng, 3, 1, "s");
  StructureKernelParams other = cfg.structure;
  other.cd = 0.5;
  const auto m = build_structure_matrix(other, 8);
  CHECK_THROWS_AS(sequence_kernel(s, s, cfg, &m), std::invalid_argument);
}

TEST_CASE("naive per-pair oracle agrees across structure kinds") {
  Rng rng(31);
  for (auto kind : {StructureKernelKind::exponential, StructureKernelKind::polynomial,
                    StructureKernelKind::factorial, StructureKernelKind::path}) {
    KernelConfig cfg;
    cfg.normalize = false;
    cfg.symbol.kind = SymbolKernelKind::rbf;
    cfg.symbol.sigma = 1.3;
    cfg.structure.kind = kind;
    cfg.structure.alpha = 3.0;
    cfg.structure.poly_c = 1.0;
    cfg.structure.poly_degree = 2;
    cfg.structure.fact_d = 1;
    cfg.structure.chv = 0.35;
    cfg.structure.cd = 0.3;
    for (int rep = 0; rep < 10; ++rep) {
      const Index ls = 1 + static_cast<Index>(rng.uniform_int(0, 6));
      const Index lt = 1 + static_cast<Index>(rng.uniform_int(0, 6));
      const Sequence s = random_sequence(rng, ls, 2, "s");
      const Sequence t = random_sequence(rng, lt, 2, "t");
      const double expected = oracles::naive_sequence_kernel(s, t, cfg);
      CHECK(sequence_kernel(s, t, cfg) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}
