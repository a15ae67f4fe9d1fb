#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <limits>

#include "oracles.hpp"
#include "seqk/rng.hpp"
#include "seqk/structure.hpp"

using namespace seqk;

TEST_CASE("exponential structure kernel matches direct substitution") {
  StructureKernelParams p;
  p.kind = StructureKernelKind::exponential;
  p.alpha = 4.0;
  CHECK(structure_kernel(1, 3, p) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  p.alpha = 0.7;
  CHECK(structure_kernel(5, 5, p) == 1.0);
  CHECK(structure_kernel(17, 17, p) == 1.0);
}

TEST_CASE("exponential values stay in (0, 1] and symmetric") {
  StructureKernelParams p;
  p.kind = StructureKernelKind::exponential;
  p.alpha = 2.5;
  for (Index i = 1; i <= 20; ++i) {
    for (Index j = 1; j <= 20; ++j) {
      const double v = structure_kernel(i, j, p);
      CHECK(v > 0.0);
      CHECK(v <= 1.0);
      CHECK(v == structure_kernel(j, i, p));
    }
  }
}

TEST_CASE("polynomial structure kernel") {
  StructureKernelParams p;
  p.kind = StructureKernelKind::polynomial;
  p.poly_c = 1.0;
  p.poly_degree = 2;
  CHECK(structure_kernel(2, 3, p) == doctest::Approx(49.0));
  p.poly_degree = 0;
  CHECK(structure_kernel(7, 9, p) == 1.0);
}

TEST_CASE("factorial kernel follows (x + x' - d)!") {
  CHECK(factorial_kernel(1, 2, 0) == 6.0);  // 3!
  CHECK(factorial_kernel(2, 2, 4) == 1.0);  // 0!
  CHECK(factorial_kernel(10, 10, -1) == factorial_as_double(21));
  CHECK_THROWS_AS(factorial_kernel(1, 1, 3), std::domain_error);

  StructureKernelParams p;
  p.kind = StructureKernelKind::factorial;
  p.fact_d = 0;
  CHECK(structure_kernel(1, 2, p) == 6.0);
  CHECK_THROWS_AS(structure_kernel(0, 2, p), std::domain_error);
}

TEST_CASE("factorial values exact through 20 and finite real beyond") {
  CHECK(factorial_as_double(20) == 2432902008176640000.0);
  const double f21 = factorial_as_double(21);
  const double exact21 = 21.0 * 2432902008176640000.0;
  CHECK(std::abs(f21 - exact21) / exact21 < 1e-12);
}

TEST_CASE("path lattice seed and first row") {
  Rng rng(7);
  for (int rep = 0; rep < 5; ++rep) {
    const double chv = rng.uniform(0.0, 1.0);
    const double cd = rng.uniform(0.0, 1.0);
    const auto t = path_structure_table<double>(4, chv, cd);
    CHECK(t(0, 0) == 1.0);                      // k_Gamma(1,1)
    CHECK(t(0, 1) == doctest::Approx(chv));     // k_Gamma(1,2)
    CHECK(t(1, 0) == doctest::Approx(chv));     // k_Gamma(2,1)
    CHECK(t(1, 1) == doctest::Approx(2.0 * chv * chv + cd));  // hand-expanded k_Gamma(2,2)
  }
}

TEST_CASE("k_Gamma(2,2) equals the 3-path enumeration") {
  // paths on a 2x2 lattice: right+down, down+right (weight chv^2 each),
  // one diagonal (weight cd)
  const double chv = 0.37, cd = 0.21;
  const double enumerated = chv * chv + chv * chv + cd;
  const auto t = path_structure_table<double>(2, chv, cd);
  CHECK(t(1, 1) == doctest::Approx(enumerated).epsilon(1e-15));
}

TEST_CASE("unit-weight lattice reproduces Delannoy numbers exactly") {
  const auto t = path_structure_table<std::int64_t>(10, std::int64_t{1}, std::int64_t{1});
  for (int i = 1; i <= 10; ++i)
    for (int j = 1; j <= 10; ++j)
      CHECK(t(i - 1, j - 1) == static_cast<std::int64_t>(oracles::delannoy(i - 1, j - 1)));
  CHECK(t(2, 2) == 13);  // D(2,2)
  CHECK(t(3, 3) == 63);  // D(3,3)
}

TEST_CASE("structure matrix is symmetric with finite entries") {
  Rng rng(11);
  StructureKernelParams p;
  p.kind = StructureKernelKind::path;
  p.chv = rng.uniform(0.0, 0.5);
  p.cd = rng.uniform(0.0, 0.5);
  const auto m = build_structure_matrix(p, 20);
  CHECK(m.values.allFinite());
  CHECK((m.values - m.values.transpose()).cwiseAbs().maxCoeff() == 0.0);

  p.kind = StructureKernelKind::exponential;
  p.alpha = 4.0;
  const auto me = build_structure_matrix(p, 20);
  CHECK((me.values - me.values.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("negative path weights are rejected") {
  StructureKernelParams p;
  p.kind = StructureKernelKind::path;
  p.chv = -0.1;
  p.cd = 0.3;
  CHECK_THROWS_AS(build_structure_matrix(p, 4), std::domain_error);
  CHECK_THROWS_AS(path_structure_gradient_tables(4, 0.3, -0.2), std::domain_error);
}

TEST_CASE("structure-kernel evaluation counter is bounded by the table size") {
  StructureKernelParams p;
  p.kind = StructureKernelKind::exponential;
  p.alpha = 4.0;
  telemetry::reset_structure_evals();
  build_structure_matrix(p, 32);
  CHECK(telemetry::structure_eval_count() <= 32 * 32);

  p.kind = StructureKernelKind::path;
  p.chv = 0.3;
  p.cd = 0.3;
  telemetry::reset_structure_evals();
  build_structure_matrix(p, 32);
  CHECK(telemetry::structure_eval_count() == 32 * 32);
}

TEST_CASE("path gradient tables differentiate the recurrence") {
  const double chv = 0.31, cd = 0.27;
  const auto g = path_structure_gradient_tables(8, chv, cd);
  CHECK(g.dcd(1, 1) == doctest::Approx(1.0));             // d(2chv^2+cd)/dcd
  CHECK(g.dchv(1, 1) == doctest::Approx(4.0 * chv));      // d(2chv^2+cd)/dchv
  CHECK(g.dchv(0, 0) == 0.0);
  CHECK(g.dcd(0, 0) == 0.0);

  const double h = 1e-6;
  for (Index i = 0; i < 8; ++i) {
    for (Index j = 0; j < 8; ++j) {
      const double fd_chv = oracles::central_difference(
          [&](double x) { return path_structure_table<double>(8, x, cd)(i, j); }, chv, h);
      const double fd_cd = oracles::central_difference(
          [&](double x) { return path_structure_table<double>(8, chv, x)(i, j); }, cd, h);
      CHECK(g.dchv(i, j) == doctest::Approx(fd_chv).epsilon(1e-6));
      CHECK(g.dcd(i, j) == doctest::Approx(fd_cd).epsilon(1e-6));
    }
  }
}

TEST_CASE("parameter validation rejects bad values") {
  SymbolKernelParams sym;
  sym.kind = SymbolKernelKind::rbf;
  sym.sigma = 0.0;
  CHECK_THROWS_AS(validate(sym), std::domain_error);
  sym.sigma = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(validate(sym), std::domain_error);

  StructureKernelParams st;
  st.kind = StructureKernelKind::exponential;
  st.alpha = -1.0;
  CHECK_THROWS_AS(validate(st), std::domain_error);
  st.kind = StructureKernelKind::polynomial;
  st.poly_c = -0.5;
  CHECK_THROWS_AS(validate(st), std::domain_error);
}

TEST_CASE("growth warning fires above the geometric threshold") {
  StructureKernelParams p;
  p.kind = StructureKernelKind::path;
  p.chv = 0.3;
  p.cd = 0.3;
  CHECK_FALSE(path_growth_warning(p));
  p.chv = 0.4;
  p.cd = 0.3;
  CHECK(path_growth_warning(p));
}
