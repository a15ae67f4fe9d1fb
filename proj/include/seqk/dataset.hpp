#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "seqk/types.hpp"

namespace seqk {

struct LengthStats {
  Index min = 0;
  Index max = 0;
  double median = 0.0;
};

/// A labeled collection of sequences with uniform symbol dimension.
struct Dataset {
  std::vector<Sequence> sequences;
  std::vector<std::string> class_names;  // sorted unique labels
  Index dim = 0;
  std::vector<std::pair<std::string, std::string>> metadata;

  std::size_t size() const { return sequences.size(); }
  LengthStats length_stats() const;
  std::vector<int> label_indices() const;  // position of each label in class_names
  std::vector<std::string> labels() const;
};

/// Builds a Dataset from sequences: derives class names, validates that all
/// nonempty sequences share one symbol dimension and hold finite values.
Dataset make_dataset(std::vector<Sequence> sequences,
                     std::vector<std::pair<std::string, std::string>> metadata = {});

/// Parses the SEQT text format: one record per line,
///   label<TAB>v,v,...;v,v,...;...
/// where each ';'-separated group is one symbol and ','-separated decimals
/// are its components. Lines starting with '#' are comments. Errors carry
/// the offending line number.
Dataset parse_dataset(const std::filesystem::path& path);

/// Writes SEQT with 17 significant digits (value-exact round trips) and the
/// dataset metadata as leading comment lines.
void write_dataset(const Dataset& data, const std::filesystem::path& path);

}  // namespace seqk
