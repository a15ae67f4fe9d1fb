#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "seqk/structure.hpp"
#include "seqk/types.hpp"

namespace seqk {

/// Symmetric matrix of pairwise sequence-kernel values with provenance.
struct GramMatrix {
  Eigen::MatrixXd values;
  std::vector<std::string> ids;
  KernelConfig config;
  std::uint64_t input_checksum = 0;

  Index size() const { return values.rows(); }
};

struct PsdReport {
  double min_eig = 0.0;
  double max_eig = 0.0;
  bool pass = false;
};

/// Kernel value under the configured family (decomposable or
/// global-alignment), honoring cfg.normalize. GA self-normalization is done
/// in the log domain.
double kernel_value(const Sequence& s, const Sequence& t, const KernelConfig& cfg,
                    const StructureMatrix* m = nullptr);

/// Pairwise Gram over a dataset. The structure matrix is precomputed once
/// for the maximal length; the upper triangle is evaluated (optionally in
/// parallel over pairs) and mirrored.
GramMatrix build_gram(const std::vector<Sequence>& data, const KernelConfig& cfg,
                      int threads = 1);

/// Rectangular kernel matrix between two datasets, rows indexing A.
Eigen::MatrixXd cross_gram(const std::vector<Sequence>& a, const std::vector<Sequence>& b,
                           const KernelConfig& cfg, int threads = 1);

/// Eigenvalue extremes of a symmetric matrix; pass iff
/// min_eig >= -tol * max(1, max_eig). Rejects visibly asymmetric input.
PsdReport check_psd(const Eigen::MatrixXd& g, double tol = 1e-8);

/// FNV-1a over ids, shapes and raw symbol values; identifies the kernel
/// inputs a Gram was built from.
std::uint64_t dataset_checksum(const std::vector<Sequence>& data);

/// Provenance check: does the stored input checksum match this dataset?
/// Callers should warn (not fail) on a mismatch.
inline bool gram_matches_dataset(const GramMatrix& g, const std::vector<Sequence>& data) {
  return g.input_checksum == dataset_checksum(data);
}

void save_gram(const GramMatrix& g, const std::filesystem::path& path);
GramMatrix load_gram(const std::filesystem::path& path);
void write_gram_csv(const GramMatrix& g, const std::filesystem::path& path);

}  // namespace seqk
