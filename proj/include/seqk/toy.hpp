#pragma once

#include <cstdint>

#include "seqk/dataset.hpp"

namespace seqk {

/// Noisy sine vs cosine curves of varying length, one full period each.
struct SineCosineParams {
  int n_per_class = 10;
  Index len_min = 20;
  Index len_max = 40;
  double noise_sd = 0.1;
  std::uint64_t seed = 1;
};

Dataset gen_sine_cosine(const SineCosineParams& p);

/// Noisy sine vs square waves of fixed length; half of each waveform class
/// gets 5 random positions overwritten with the value 4 before noise. The
/// same sequences come back under two labelings: by waveform and by
/// spiked/clean.
struct SineSquareSpikeParams {
  int n_per_class = 10;  // must be even: exactly half of each class is spiked
  Index length = 64;
  double noise_sd = 0.1;
  std::uint64_t seed = 1;
};

struct TwoTaskDataset {
  Dataset waveform;  // labels: sine / square
  Dataset spike;     // labels: clean / spiked
};

TwoTaskDataset gen_sine_square_spike(const SineSquareSpikeParams& p);

}  // namespace seqk
