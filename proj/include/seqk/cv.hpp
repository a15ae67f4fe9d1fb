#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seqk/dataset.hpp"
#include "seqk/rng.hpp"
#include "seqk/types.hpp"

namespace seqk {

struct CvOptions {
  int outer_folds = 3;
  int outer_reps = 3;
  int inner_folds = 3;
  int inner_reps = 20;
  std::uint64_t seed = 0;
  int threads = 1;
  bool normalize = true;
  KernelFamily family = KernelFamily::decomposable;
  StructureKernelKind structure_kind = StructureKernelKind::path;
  SymbolKernelKind symbol_kind = SymbolKernelKind::rbf;
};

struct FoldOutcome {
  double accuracy = 0.0;
  KernelConfig config;          // selected kernel parameters
  double svm_c = 1.0;           // selected regularization
  double inner_accuracy = 0.0;  // mean inner score of the selection
  double seconds = 0.0;
};

struct CvReport {
  std::vector<FoldOutcome> folds;  // outer_reps * outer_folds, repetition-major
  double mean_accuracy = 0.0;
  double sd_accuracy = 0.0;  // sample standard deviation over folds
  CvOptions options;
  double median_symbol_distance = 0.0;
  std::size_t candidate_count = 0;
  double total_seconds = 0.0;
};

/// Candidate kernel configurations and SVM regularization values searched by
/// the inner cross-validation. Kernel candidates are ordered so that the
/// first best-scoring entry realizes the tie policy (larger sigma first,
/// then smaller remaining parameters).
struct CandidateGrid {
  std::vector<KernelConfig> kernels;
  std::vector<double> svm_c{0.1, 1.0, 10.0, 100.0};
};

CandidateGrid default_grid(KernelFamily family, StructureKernelKind kind,
                           SymbolKernelKind symbol_kind, bool normalize, double median_dist);

/// Median Euclidean distance between symbol pairs across the dataset
/// (deterministically subsampled above 2048 symbols); anchors the bandwidth
/// grid.
double median_pairwise_symbol_distance(const std::vector<Sequence>& data, std::uint64_t seed);

/// Splits label indices into k folds, stratified per class, shuffled by rng.
/// Throws when any class has fewer members than folds.
std::vector<std::vector<int>> stratified_folds(const std::vector<int>& labels, int k, Rng& rng);

/// Nested cross-validation: outer folds estimate accuracy while inner folds
/// select (kernel parameters, C) over the default grid by mean accuracy,
/// ties resolved toward smaller C then larger sigma. Fully seeded.
CvReport nested_cv_classify(const Dataset& data, const CvOptions& options);

}  // namespace seqk
