#include "seqk/cv.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "seqk/gram.hpp"
#include "seqk/metrics.hpp"
#include "seqk/parallel.hpp"
#include "seqk/svm.hpp"

namespace seqk {

namespace {

// rng stream tags so the fold layouts and the subsampler draw independent
// streams from one master seed
constexpr std::uint64_t kStreamOuter = 1'000'000;
constexpr std::uint64_t kStreamInner = 2'000'000'000ULL;
constexpr std::uint64_t kStreamMedian = 42;

double now_seconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

Eigen::MatrixXd slice(const Eigen::MatrixXd& m, const std::vector<int>& rows,
                      const std::vector<int>& cols) {
  Eigen::MatrixXd out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out(static_cast<Index>(i), static_cast<Index>(j)) = m(rows[i], cols[j]);
  return out;
}

template <class T>
std::vector<T> gather(const std::vector<T>& v, const std::vector<int>& idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(v[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace

double median_pairwise_symbol_distance(const std::vector<Sequence>& data, std::uint64_t seed) {
  std::vector<Eigen::VectorXd> symbols;
  for (const auto& s : data)
    for (Index j = 0; j < s.length(); ++j) symbols.emplace_back(s.symbol(j));
  if (symbols.size() < 2) return 1.0;

  constexpr std::size_t kMaxSymbols = 2048;
  if (symbols.size() > kMaxSymbols) {
    std::vector<std::size_t> order(symbols.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(mix_seed(seed, kStreamMedian));
    rng.shuffle(order);
    std::vector<Eigen::VectorXd> sub;
    sub.reserve(kMaxSymbols);
    for (std::size_t i = 0; i < kMaxSymbols; ++i) sub.push_back(symbols[order[i]]);
    symbols = std::move(sub);
  }

  std::vector<double> dist;
  dist.reserve(symbols.size() * (symbols.size() - 1) / 2);
  for (std::size_t i = 0; i < symbols.size(); ++i)
    for (std::size_t j = i + 1; j < symbols.size(); ++j)
      dist.push_back((symbols[i] - symbols[j]).norm());

  const std::size_t n = dist.size();
  auto mid = dist.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(dist.begin(), mid, dist.end());
  double median = *mid;
  if (n % 2 == 0) {
    auto lower = dist.begin() + static_cast<std::ptrdiff_t>(n / 2 - 1);
    std::nth_element(dist.begin(), lower, dist.end());
    median = 0.5 * (median + *lower);
  }
  return median > 0.0 ? median : 1.0;
}

CandidateGrid default_grid(KernelFamily family, StructureKernelKind kind,
                           SymbolKernelKind symbol_kind, bool normalize, double median_dist) {
  CandidateGrid grid;
  std::vector<double> sigmas;
  if (symbol_kind == SymbolKernelKind::rbf || family == KernelFamily::global_alignment) {
    for (double f : {4.0, 2.0, 1.0, 0.5, 0.25}) sigmas.push_back(f * median_dist);  // larger first
  } else {
    sigmas.push_back(1.0);  // placeholder, kernel ignores it
  }

  auto base = [&](double sigma) {
    KernelConfig cfg;
    cfg.family = family;
    cfg.symbol.kind = family == KernelFamily::global_alignment ? SymbolKernelKind::rbf : symbol_kind;
    cfg.symbol.sigma = sigma;
    cfg.normalize = normalize;
    cfg.structure.kind = kind;
    return cfg;
  };

  for (double sigma : sigmas) {
    if (family == KernelFamily::global_alignment) {
      grid.kernels.push_back(base(sigma));
      continue;
    }
    switch (kind) {
      case StructureKernelKind::path:
        for (double chv : {0.25, 0.3, 0.35, 0.4})
          for (double cd : {0.25, 0.3, 0.35, 0.4}) {
            KernelConfig cfg = base(sigma);
            cfg.structure.chv = chv;
            cfg.structure.cd = cd;
            grid.kernels.push_back(cfg);
          }
        break;
      case StructureKernelKind::exponential:
        for (double alpha : {1.0, 4.0, 16.0, 64.0}) {
          KernelConfig cfg = base(sigma);
          cfg.structure.alpha = alpha;
          grid.kernels.push_back(cfg);
        }
        break;
      case StructureKernelKind::polynomial:
        for (double c : {0.0, 1.0})
          for (int degree : {1, 2, 3}) {
            KernelConfig cfg = base(sigma);
            cfg.structure.poly_c = c;
            cfg.structure.poly_degree = degree;
            grid.kernels.push_back(cfg);
          }
        break;
      case StructureKernelKind::factorial:
        for (int d : {0, 1, 2}) {
          KernelConfig cfg = base(sigma);
          cfg.structure.fact_d = d;
          grid.kernels.push_back(cfg);
        }
        break;
    }
  }
  return grid;
}

std::vector<std::vector<int>> stratified_folds(const std::vector<int>& labels, int k, Rng& rng) {
  if (k < 2) throw std::invalid_argument("fold count must be >= 2");
  int n_classes = 0;
  for (int l : labels) n_classes = std::max(n_classes, l + 1);
  std::vector<std::vector<int>> by_class(static_cast<std::size_t>(n_classes));
  for (std::size_t i = 0; i < labels.size(); ++i)
    by_class[static_cast<std::size_t>(labels[i])].push_back(static_cast<int>(i));

  for (std::size_t c = 0; c < by_class.size(); ++c)
    if (!by_class[c].empty() && static_cast<int>(by_class[c].size()) < k)
      throw std::invalid_argument("stratification error: class " + std::to_string(c) + " has " +
                                  std::to_string(by_class[c].size()) + " members but " +
                                  std::to_string(k) + " folds were requested");

  std::vector<std::vector<int>> folds(static_cast<std::size_t>(k));
  for (auto& members : by_class) {
    rng.shuffle(members);
    for (std::size_t i = 0; i < members.size(); ++i)
      folds[i % static_cast<std::size_t>(k)].push_back(members[i]);
  }
  for (auto& fold : folds) std::sort(fold.begin(), fold.end());
  return folds;
}

CvReport nested_cv_classify(const Dataset& data, const CvOptions& options) {
  const double t_start = now_seconds();
  if (data.class_names.size() < 2)
    throw std::invalid_argument("classification requires at least two classes");
  if (options.outer_reps < 1 || options.inner_reps < 1)
    throw std::invalid_argument("repetition counts must be >= 1");

  const std::vector<int> labels = data.label_indices();
  const std::vector<std::string> label_names = data.labels();
  const auto n = static_cast<int>(data.size());

  const double median_dist = median_pairwise_symbol_distance(data.sequences, options.seed);
  CandidateGrid grid = default_grid(options.family, options.structure_kind, options.symbol_kind,
                                    options.normalize, median_dist);
  const std::size_t n_cand = grid.kernels.size();
  const std::size_t n_c = grid.svm_c.size();
  const std::size_t n_outer = static_cast<std::size_t>(options.outer_reps) *
                              static_cast<std::size_t>(options.outer_folds);

  // Outer fold layouts first: they are shared by every candidate sweep.
  struct OuterSplit {
    std::vector<int> train;
    std::vector<int> test;
  };
  std::vector<OuterSplit> outer(n_outer);
  for (int r = 0; r < options.outer_reps; ++r) {
    Rng rng(mix_seed(options.seed, kStreamOuter + static_cast<std::uint64_t>(r)));
    const auto folds = stratified_folds(labels, options.outer_folds, rng);
    for (int f = 0; f < options.outer_folds; ++f) {
      OuterSplit split;
      split.test = folds[static_cast<std::size_t>(f)];
      for (int i = 0; i < n; ++i)
        if (!std::binary_search(split.test.begin(), split.test.end(), i))
          split.train.push_back(i);
      outer[static_cast<std::size_t>(r * options.outer_folds + f)] = std::move(split);
    }
  }

  // Inner fold layouts, one set per (outer split, repetition), shared across
  // candidates so the selection is a paired comparison.
  struct InnerSplit {
    std::vector<std::vector<int>> folds;  // positions within the outer train list
  };
  std::vector<std::vector<InnerSplit>> inner(n_outer);
  for (std::size_t o = 0; o < n_outer; ++o) {
    const std::vector<int> train_labels = gather(labels, outer[o].train);
    inner[o].resize(static_cast<std::size_t>(options.inner_reps));
    for (int q = 0; q < options.inner_reps; ++q) {
      Rng rng(mix_seed(options.seed,
                       kStreamInner + static_cast<std::uint64_t>(o) * 100'000 +
                           static_cast<std::uint64_t>(q)));
      inner[o][static_cast<std::size_t>(q)].folds =
          stratified_folds(train_labels, options.inner_folds, rng);
    }
  }

  // score(cand, c, outer) = mean inner accuracy
  std::vector<double> scores(n_cand * n_c * n_outer, 0.0);
  auto score_at = [&](std::size_t cand, std::size_t c, std::size_t o) -> double& {
    return scores[(cand * n_c + c) * n_outer + o];
  };

  parallel_for(0, n_cand, options.threads, [&](std::size_t cand) {
    const Eigen::MatrixXd gram = build_gram(data.sequences, grid.kernels[cand], 1).values;
    for (std::size_t o = 0; o < n_outer; ++o) {
      const std::vector<int>& train = outer[o].train;
      const std::vector<std::string> train_names = gather(label_names, train);
      std::vector<double> sums(n_c, 0.0);
      std::size_t count = 0;
      for (int q = 0; q < options.inner_reps; ++q) {
        const auto& folds = inner[o][static_cast<std::size_t>(q)].folds;
        for (const auto& val_pos : folds) {
          std::vector<int> fit_idx, val_idx;
          for (int pos : val_pos) val_idx.push_back(train[static_cast<std::size_t>(pos)]);
          for (std::size_t p = 0; p < train.size(); ++p)
            if (!std::binary_search(val_pos.begin(), val_pos.end(), static_cast<int>(p)))
              fit_idx.push_back(train[p]);
          const Eigen::MatrixXd k_fit = slice(gram, fit_idx, fit_idx);
          const Eigen::MatrixXd k_val = slice(gram, fit_idx, val_idx);
          const auto fit_names = gather(label_names, fit_idx);
          const auto val_names = gather(label_names, val_idx);
          for (std::size_t c = 0; c < n_c; ++c) {
            const SvmModel model = svm_train(k_fit, fit_names, grid.svm_c[c]);
            sums[c] += accuracy_score(svm_predict(model, k_val), val_names);
          }
          ++count;
        }
      }
      for (std::size_t c = 0; c < n_c; ++c)
        score_at(cand, c, o) = sums[c] / static_cast<double>(count);
    }
  });

  // Selection and outer evaluation. Iterating C ascending then candidates in
  // grid order realizes the tie policy (smaller C, then larger sigma).
  CvReport report;
  report.options = options;
  report.median_symbol_distance = median_dist;
  report.candidate_count = n_cand;
  report.folds.resize(n_outer);
  for (std::size_t o = 0; o < n_outer; ++o) {
    const double t_fold = now_seconds();
    std::size_t best_cand = 0, best_c = 0;
    double best_score = -1.0;
    for (std::size_t c = 0; c < n_c; ++c)
      for (std::size_t cand = 0; cand < n_cand; ++cand)
        if (score_at(cand, c, o) > best_score) {
          best_score = score_at(cand, c, o);
          best_cand = cand;
          best_c = c;
        }

    const Eigen::MatrixXd gram = build_gram(data.sequences, grid.kernels[best_cand], 1).values;
    const std::vector<int>& train = outer[o].train;
    const std::vector<int>& test = outer[o].test;
    const SvmModel model =
        svm_train(slice(gram, train, train), gather(label_names, train), grid.svm_c[best_c]);
    const auto predicted = svm_predict(model, slice(gram, train, test));

    FoldOutcome& fold = report.folds[o];
    fold.accuracy = accuracy_score(predicted, gather(label_names, test));
    fold.config = grid.kernels[best_cand];
    fold.svm_c = grid.svm_c[best_c];
    fold.inner_accuracy = best_score;
    fold.seconds = now_seconds() - t_fold;
  }

  double mean = 0.0;
  for (const auto& f : report.folds) mean += f.accuracy;
  mean /= static_cast<double>(report.folds.size());
  double var = 0.0;
  for (const auto& f : report.folds) var += (f.accuracy - mean) * (f.accuracy - mean);
  report.mean_accuracy = mean;
  report.sd_accuracy =
      report.folds.size() > 1 ? std::sqrt(var / static_cast<double>(report.folds.size() - 1)) : 0.0;
  report.total_seconds = now_seconds() - t_start;
  return report;
}

}  // namespace seqk
