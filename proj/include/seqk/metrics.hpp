#pragma once

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqk/types.hpp"

namespace seqk {

inline double accuracy_score(const std::vector<std::string>& predicted,
                             const std::vector<std::string>& truth) {
  if (predicted.size() != truth.size() || truth.empty())
    throw std::invalid_argument("accuracy needs equal-length nonempty label lists");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i)
    if (predicted[i] == truth[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

/// Mean silhouette value over embedded points (Euclidean distances);
/// singleton-class points contribute 0.
inline double silhouette_score(const Eigen::MatrixXd& coords, const std::vector<int>& labels) {
  const Index n = coords.rows();
  if (static_cast<Index>(labels.size()) != n)
    throw std::invalid_argument("label count does not match coordinate rows");
  int n_classes = 0;
  for (int l : labels) n_classes = std::max(n_classes, l + 1);
  if (n_classes < 2) throw std::invalid_argument("silhouette needs at least two classes");

  double total = 0.0;
  for (Index i = 0; i < n; ++i) {
    std::vector<double> mean_dist(static_cast<std::size_t>(n_classes), 0.0);
    std::vector<int> counts(static_cast<std::size_t>(n_classes), 0);
    for (Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const auto cls = static_cast<std::size_t>(labels[static_cast<std::size_t>(j)]);
      mean_dist[cls] += (coords.row(i) - coords.row(j)).norm();
      ++counts[cls];
    }
    const auto own = static_cast<std::size_t>(labels[static_cast<std::size_t>(i)]);
    if (counts[own] == 0) continue;  // singleton: contributes 0
    const double a = mean_dist[own] / counts[own];
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t cls = 0; cls < mean_dist.size(); ++cls) {
      if (cls == own || counts[cls] == 0) continue;
      b = std::min(b, mean_dist[cls] / counts[cls]);
    }
    const double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;
  }
  return total / static_cast<double>(n);
}

/// Distance between class centroids divided by the mean within-class spread
/// (average distance of points to their own centroid); defined for exactly
/// two classes.
inline double centroid_separation_ratio(const Eigen::MatrixXd& coords,
                                        const std::vector<int>& labels) {
  const Index n = coords.rows();
  if (static_cast<Index>(labels.size()) != n)
    throw std::invalid_argument("label count does not match coordinate rows");
  Eigen::RowVectorXd c0 = Eigen::RowVectorXd::Zero(coords.cols());
  Eigen::RowVectorXd c1 = Eigen::RowVectorXd::Zero(coords.cols());
  Index n0 = 0, n1 = 0;
  for (Index i = 0; i < n; ++i) {
    if (labels[static_cast<std::size_t>(i)] == 0) {
      c0 += coords.row(i);
      ++n0;
    } else if (labels[static_cast<std::size_t>(i)] == 1) {
      c1 += coords.row(i);
      ++n1;
    } else {
      throw std::invalid_argument("centroid separation is defined for two classes (labels 0/1)");
    }
  }
  if (n0 == 0 || n1 == 0) throw std::invalid_argument("both classes need at least one point");
  c0 /= static_cast<double>(n0);
  c1 /= static_cast<double>(n1);
  double spread = 0.0;
  for (Index i = 0; i < n; ++i)
    spread += (coords.row(i) - (labels[static_cast<std::size_t>(i)] == 0 ? c0 : c1)).norm();
  spread /= static_cast<double>(n);
  if (spread == 0.0) return std::numeric_limits<double>::infinity();
  return (c0 - c1).norm() / spread;
}

}  // namespace seqk
