#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "seqk/gp.hpp"
#include "seqk/gram.hpp"
#include "seqk/rng.hpp"

using namespace seqk;

namespace {

std::vector<Sequence> random_labeled(Rng& rng, int n, Index max_len, Index dim = 2) {
  std::vector<Sequence> data;
  for (int i = 0; i < n; ++i) {
    const Index len = 1 + static_cast<Index>(rng.uniform_int(0, max_len - 1));
    Eigen::MatrixXd m(dim, len);
    for (Index j = 0; j < len; ++j)
      for (Index r = 0; r < dim; ++r) m(r, j) = rng.uniform(-1.5, 1.5);
    data.emplace_back(std::move(m), "g" + std::to_string(i), i % 2 == 0 ? "u" : "v");
  }
  return data;
}

KernelConfig toy_config(bool normalize = true) {
  KernelConfig cfg;
  cfg.symbol.kind = SymbolKernelKind::rbf;
  cfg.symbol.sigma = 1.0;
  cfg.structure.kind = StructureKernelKind::path;
  cfg.structure.chv = 0.3;
  cfg.structure.cd = 0.3;
  cfg.normalize = normalize;
  return cfg;
}

}  // namespace

TEST_CASE("one-hot targets follow sorted class names") {
  const auto t = one_hot_targets({"b", "a", "b"});
  CHECK(t.class_names == std::vector<std::string>{"a", "b"});
  CHECK(t.y(0, 1) == 1.0);
  CHECK(t.y(1, 0) == 1.0);
  CHECK(t.y.sum() == 3.0);
}

TEST_CASE("single training point predicts a scaled copy of its target row") {
  Eigen::MatrixXd kernel(1, 1);
  kernel(0, 0) = 2.0;
  // one class is degenerate for classification but fine for regression
  const auto model = gp_fit(kernel, {"only"}, 0.5);
  Eigen::MatrixXd cross(1, 3);
  cross << 2.0, 1.0, 0.5;
  const auto pred = gp_predict(model, cross, Eigen::VectorXd::Constant(3, 2.0));
  // mean = cross / (k + noise) * y
  CHECK(pred.mean(0, 0) == doctest::Approx(2.0 / 2.5));
  CHECK(pred.mean(1, 0) == doctest::Approx(1.0 / 2.5));
  CHECK(pred.mean(2, 0) == doctest::Approx(0.5 / 2.5));
}

TEST_CASE("near-zero noise interpolates the one-hot rows at training points") {
  Rng rng(401);
  const auto data = random_labeled(rng, 10, 6);
  std::vector<std::string> labels;
  for (const auto& s : data) labels.push_back(s.label);
  const auto gram = build_gram(data, toy_config());
  const auto model = gp_fit(gram, labels, 1e-9);
  const auto pred = gp_predict(model, gram.values, gram.values.diagonal());
  CHECK((pred.mean - model.targets).cwiseAbs().maxCoeff() < 1e-3);
  CHECK(pred.labels == labels);
}

TEST_CASE("huge noise shrinks predictions toward the majority class") {
  Rng rng(409);
  // imbalanced, nearly identical sequences: kernel values all close to 1
  std::vector<Sequence> data;
  std::vector<std::string> labels;
  for (int i = 0; i < 8; ++i) {
    Eigen::MatrixXd m(1, 4);
    for (Index j = 0; j < 4; ++j) m(0, j) = 0.5 + 1e-3 * rng.uniform();
    const std::string label = i < 6 ? "big" : "small";
    data.emplace_back(std::move(m), "s" + std::to_string(i), label);
    labels.push_back(label);
  }
  const auto gram = build_gram(data, toy_config());
  const auto model = gp_fit(gram, labels, 1e6);
  const auto pred = gp_predict(model, gram.values, gram.values.diagonal());
  for (const auto& l : pred.labels) CHECK(l == "big");
}

TEST_CASE("argmax is invariant to positive scaling of the targets") {
  Rng rng(419);
  const auto data = random_labeled(rng, 12, 6);
  std::vector<std::string> labels;
  for (const auto& s : data) labels.push_back(s.label);
  const auto gram = build_gram(data, toy_config());
  auto model = gp_fit(gram, labels, 0.3);
  const auto before = gp_predict(model, gram.values, gram.values.diagonal());
  model.alpha *= 7.5;  // equivalent to scaling Y by 7.5
  const auto after = gp_predict(model, gram.values, gram.values.diagonal());
  CHECK(before.labels == after.labels);
}

TEST_CASE("identity-Gram marginal likelihood matches the closed form") {
  const Index n = 5;
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n, 1);
  y(0, 0) = 1.0;  // unit vector
  const double lml = log_marginal_likelihood(Eigen::MatrixXd::Identity(n, n), y, 1e-12);
  const double expected = -0.5 - 0.5 * static_cast<double>(n) * std::log(2.0 * M_PI);
  CHECK(lml == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("marginal likelihood is invariant under dataset permutation") {
  Rng rng(421);
  const auto data = random_labeled(rng, 9, 6);
  std::vector<std::string> labels;
  for (const auto& s : data) labels.push_back(s.label);
  const auto gram = build_gram(data, toy_config());
  const auto y = one_hot_targets(labels).y;
  const double before = log_marginal_likelihood(gram.values, y, 0.2);

  std::vector<int> perm(data.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  Rng shuffler(5);
  shuffler.shuffle(perm);
  Eigen::MatrixXd pk(gram.size(), gram.size());
  Eigen::MatrixXd py(gram.size(), y.cols());
  for (Index i = 0; i < gram.size(); ++i) {
    py.row(i) = y.row(perm[static_cast<std::size_t>(i)]);
    for (Index j = 0; j < gram.size(); ++j)
      pk(i, j) = gram.values(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  const double after = log_marginal_likelihood(pk, py, 0.2);
  CHECK(before == doctest::Approx(after).epsilon(1e-10));
}

TEST_CASE("marginal-likelihood gradients match finite differences") {
  Rng rng(431);
  for (int rep = 0; rep < 8; ++rep) {
    const bool path = rep % 2 == 0;
    const auto data = random_labeled(rng, 7, 5);
    std::vector<std::string> labels;
    for (const auto& s : data) labels.push_back(s.label);
    const auto y = one_hot_targets(labels).y;

    KernelConfig cfg = toy_config(rep % 4 < 2);
    if (path) {
      cfg.structure.chv = rng.uniform(0.1, 0.45);
      cfg.structure.cd = rng.uniform(0.1, 0.45);
    } else {
      cfg.structure.kind = StructureKernelKind::exponential;
      cfg.structure.alpha = rng.uniform(1.0, 8.0);
    }
    cfg.symbol.sigma = rng.uniform(0.6, 2.0);
    const double noise = rng.uniform(0.05, 0.5);

    const auto result = lml_value_gradient(data, cfg, y, noise);
    auto eval = [&](const std::string& name, double v) {
      KernelConfig c2 = cfg;
      double nv = noise;
      if (name == "sigma") c2.symbol.sigma = v;
      else if (name == "alpha") c2.structure.alpha = v;
      else if (name == "chv") c2.structure.chv = v;
      else if (name == "cd") c2.structure.cd = v;
      else nv = v;
      return lml_value_gradient(data, c2, y, nv).value;
    };
    for (std::size_t p = 0; p < result.parameter_names.size(); ++p) {
      const std::string& name = result.parameter_names[p];
      double theta = noise;
      if (name == "sigma") theta = cfg.symbol.sigma;
      else if (name == "alpha") theta = cfg.structure.alpha;
      else if (name == "chv") theta = cfg.structure.chv;
      else if (name == "cd") theta = cfg.structure.cd;
      const double fd = oracles::central_difference(
          [&](double x) { return eval(name, x); }, theta, 1e-5 * std::max(1.0, std::abs(theta)));
      const double denom = std::max(1.0, std::abs(fd));
      CHECK(std::abs(result.gradient(static_cast<Index>(p)) - fd) / denom < 1e-4);
    }
  }
}

TEST_CASE("three-class GP classification recovers separable clusters") {
  Rng rng(443);
  std::vector<Sequence> data;
  std::vector<std::string> labels;
  const double centers[3] = {-3.0, 0.0, 3.0};
  const char* names[3] = {"a", "b", "c"};
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < 5; ++i) {
      Eigen::MatrixXd m(1, 4);
      for (Index j = 0; j < 4; ++j) m(0, j) = centers[c] + 0.2 * rng.normal();
      data.emplace_back(std::move(m), std::string(names[c]) + std::to_string(i), names[c]);
      labels.push_back(names[c]);
    }
  }
  const auto gram = build_gram(data, toy_config());
  const auto model = gp_fit(gram, labels, 0.01);
  REQUIRE(model.class_names.size() == 3);
  const auto pred = gp_predict(model, gram.values, gram.values.diagonal());
  CHECK(pred.labels == labels);
  CHECK(pred.variance.minCoeff() >= -1e-9);
}

TEST_CASE("noise variance must be positive") {
  CHECK_THROWS_AS(gp_fit(Eigen::MatrixXd::Identity(2, 2), {"a", "b"}, 0.0), std::domain_error);
}
