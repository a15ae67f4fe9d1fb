#include "seqk/gram.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "seqk/global_alignment.hpp"
#include "seqk/parallel.hpp"
#include "seqk/sequence_kernel.hpp"

namespace seqk {

namespace {

Index max_length(const std::vector<Sequence>& data) {
  Index lmax = 0;
  for (const auto& s : data) lmax = std::max(lmax, s.length());
  return lmax;
}

void check_dimensions(const std::vector<Sequence>& data) {
  Index dim = -1;
  for (const auto& s : data) {
    if (s.empty()) continue;
    if (dim < 0)
      dim = s.dim();
    else if (s.dim() != dim)
      throw std::invalid_argument("dataset mixes symbol dimensions");
  }
}

}  // namespace

double kernel_value(const Sequence& s, const Sequence& t, const KernelConfig& cfg,
                    const StructureMatrix* m) {
  validate(cfg);
  if (cfg.family == KernelFamily::decomposable) return sequence_kernel(s, t, cfg, m);
  const double log_st = global_alignment_log(s, t, cfg.symbol.sigma);
  if (!cfg.normalize) return std::exp(log_st);
  const double log_ss = global_alignment_log(s, s, cfg.symbol.sigma);
  const double log_tt = global_alignment_log(t, t, cfg.symbol.sigma);
  return std::exp(log_st - 0.5 * (log_ss + log_tt));
}

GramMatrix build_gram(const std::vector<Sequence>& data, const KernelConfig& cfg, int threads) {
  validate(cfg);
  if (data.empty()) throw std::invalid_argument("cannot build a Gram over an empty dataset");
  check_dimensions(data);

  const auto n = static_cast<Index>(data.size());
  const Index lmax = max_length(data);
  const bool ga = cfg.family == KernelFamily::global_alignment;

  StructureMatrix structure;
  const StructureMatrix* table = nullptr;
  if (!ga && lmax >= 1) {
    structure = build_structure_matrix(cfg.structure, lmax);
    table = &structure;
  }

  // Raw values (log values for GA) on the upper triangle, then mirror and
  // normalize. Cells are independent, so parallel evaluation is bit-identical
  // to sequential.
  Eigen::MatrixXd raw(n, n);
  std::vector<std::pair<Index, Index>> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) pairs.emplace_back(i, j);

  KernelConfig raw_cfg = cfg;
  raw_cfg.normalize = false;
  parallel_for(0, pairs.size(), threads, [&](std::size_t p) {
    const auto [i, j] = pairs[p];
    raw(i, j) = ga ? global_alignment_log(data[i], data[j], cfg.symbol.sigma)
                   : sequence_kernel(data[i], data[j], raw_cfg, table);
  });
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < i; ++j) raw(i, j) = raw(j, i);

  GramMatrix g;
  g.values.resize(n, n);
  if (cfg.normalize) {
    for (Index i = 0; i < n; ++i) {
      if (data[i].empty())
        throw std::runtime_error("normalized kernel is undefined for empty sequences");
      if (!ga && !(raw(i, i) > 0.0))
        throw std::runtime_error("normalized kernel is undefined when a self-similarity is <= 0");
    }
    for (Index i = 0; i < n; ++i) {
      for (Index j = i; j < n; ++j) {
        const double v = ga ? std::exp(raw(i, j) - 0.5 * (raw(i, i) + raw(j, j)))
                            : raw(i, j) / std::sqrt(raw(i, i) * raw(j, j));
        g.values(i, j) = v;
        g.values(j, i) = v;
      }
    }
  } else {
    g.values = ga ? raw.array().exp().matrix().eval() : raw;
  }

  g.ids.reserve(data.size());
  for (const auto& s : data) g.ids.push_back(s.id);
  g.config = cfg;
  g.input_checksum = dataset_checksum(data);
  return g;
}

Eigen::MatrixXd cross_gram(const std::vector<Sequence>& a, const std::vector<Sequence>& b,
                           const KernelConfig& cfg, int threads) {
  validate(cfg);
  if (a.empty() || b.empty())
    throw std::invalid_argument("cross Gram requires nonempty datasets");
  check_dimensions(a);
  check_dimensions(b);
  if (!a.front().empty() && !b.front().empty() && a.front().dim() != b.front().dim())
    throw std::invalid_argument("datasets have different symbol dimensions");

  const Index lmax = std::max(max_length(a), max_length(b));
  const bool ga = cfg.family == KernelFamily::global_alignment;
  StructureMatrix structure;
  const StructureMatrix* table = nullptr;
  if (!ga && lmax >= 1) {
    structure = build_structure_matrix(cfg.structure, lmax);
    table = &structure;
  }

  const auto rows = static_cast<Index>(a.size());
  const auto cols = static_cast<Index>(b.size());
  Eigen::MatrixXd out(rows, cols);

  if (!cfg.normalize) {
    parallel_for(0, static_cast<std::size_t>(rows * cols), threads, [&](std::size_t p) {
      const Index i = static_cast<Index>(p) / cols;
      const Index j = static_cast<Index>(p) % cols;
      out(i, j) = ga ? std::exp(global_alignment_log(a[i], b[j], cfg.symbol.sigma))
                     : sequence_kernel(a[i], b[j], cfg, table);
    });
    return out;
  }

  KernelConfig raw_cfg = cfg;
  raw_cfg.normalize = false;
  Eigen::VectorXd self_a(rows), self_b(cols);
  auto self_value = [&](const Sequence& s) {
    if (s.empty())
      throw std::runtime_error("normalized kernel is undefined for empty sequences");
    return ga ? global_alignment_log(s, s, cfg.symbol.sigma)
              : sequence_kernel(s, s, raw_cfg, table);
  };
  for (Index i = 0; i < rows; ++i) self_a(i) = self_value(a[i]);
  for (Index j = 0; j < cols; ++j) self_b(j) = self_value(b[j]);
  if (!ga)
    for (Index i = 0; i < rows; ++i)
      if (!(self_a(i) > 0.0))
        throw std::runtime_error("normalized kernel is undefined when a self-similarity is <= 0");
  if (!ga)
    for (Index j = 0; j < cols; ++j)
      if (!(self_b(j) > 0.0))
        throw std::runtime_error("normalized kernel is undefined when a self-similarity is <= 0");

  parallel_for(0, static_cast<std::size_t>(rows * cols), threads, [&](std::size_t p) {
    const Index i = static_cast<Index>(p) / cols;
    const Index j = static_cast<Index>(p) % cols;
    if (ga) {
      const double log_ij = global_alignment_log(a[i], b[j], cfg.symbol.sigma);
      out(i, j) = std::exp(log_ij - 0.5 * (self_a(i) + self_b(j)));
    } else {
      out(i, j) = sequence_kernel(a[i], b[j], raw_cfg, table) / std::sqrt(self_a(i) * self_b(j));
    }
  });
  return out;
}

PsdReport check_psd(const Eigen::MatrixXd& g, double tol) {
  if (g.rows() != g.cols()) throw std::invalid_argument("PSD check requires a square matrix");
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  const double asym = (g - g.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale)
    throw std::invalid_argument("PSD check rejected an asymmetric matrix");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigenvalue computation failed");
  PsdReport r;
  r.min_eig = solver.eigenvalues().minCoeff();
  r.max_eig = solver.eigenvalues().maxCoeff();
  r.pass = r.min_eig >= -tol * std::max(1.0, r.max_eig);
  return r;
}

std::uint64_t dataset_checksum(const std::vector<Sequence>& data) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a 64
  auto mix_bytes = [&h](const void* p, std::size_t n) {
    const auto* bytes = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= bytes[i];
      h *= 1099511628211ULL;
    }
  };
  const std::uint64_t n = data.size();
  mix_bytes(&n, sizeof n);
  for (const auto& s : data) {
    mix_bytes(s.id.data(), s.id.size());
    const std::uint64_t zero = 0;
    mix_bytes(&zero, 1);  // id terminator
    const std::uint64_t dim = static_cast<std::uint64_t>(s.dim());
    const std::uint64_t len = static_cast<std::uint64_t>(s.length());
    mix_bytes(&dim, sizeof dim);
    mix_bytes(&len, sizeof len);
    mix_bytes(s.symbols.data(), sizeof(double) * static_cast<std::size_t>(s.symbols.size()));
  }
  return h;
}

}  // namespace seqk
