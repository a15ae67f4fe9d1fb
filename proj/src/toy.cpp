#include "seqk/toy.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "seqk/rng.hpp"

namespace seqk {

namespace {

std::string format_id(const char* prefix, int k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%03d", prefix, k);
  return buf;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// One full period sampled at L points including both endpoints.
Eigen::MatrixXd sampled_wave(Index length, double (*wave)(double), Rng& rng, double noise_sd) {
  Eigen::MatrixXd m(1, length);
  for (Index k = 0; k < length; ++k) {
    const double t = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(length - 1);
    m(0, k) = wave(t) + (noise_sd > 0.0 ? rng.normal(0.0, noise_sd) : 0.0);
  }
  return m;
}

double sine(double t) { return std::sin(t); }
double cosine(double t) { return std::cos(t); }
double square(double t) { return std::sin(t) >= 0.0 ? 1.0 : -1.0; }

}  // namespace

Dataset gen_sine_cosine(const SineCosineParams& p) {
  if (p.n_per_class < 1) throw std::domain_error("n_per_class must be >= 1");
  if (p.len_min < 8 || p.len_max > 512 || p.len_min > p.len_max)
    throw std::domain_error("length range must lie within [8, 512] with min <= max");
  if (p.noise_sd < 0.0) throw std::domain_error("noise_sd must be >= 0");

  std::vector<Sequence> sequences;
  sequences.reserve(static_cast<std::size_t>(2 * p.n_per_class));
  const struct {
    const char* name;
    double (*wave)(double);
  } classes[2] = {{"sine", &sine}, {"cosine", &cosine}};
  for (int c = 0; c < 2; ++c) {
    for (int k = 0; k < p.n_per_class; ++k) {
      Rng rng(mix_seed(p.seed, static_cast<std::uint64_t>(c) * 100000 + k));
      const Index length = p.len_min + static_cast<Index>(rng.uniform_int(0, p.len_max - p.len_min));
      sequences.emplace_back(sampled_wave(length, classes[c].wave, rng, p.noise_sd),
                             format_id(classes[c].name, k), classes[c].name);
    }
  }
  std::vector<std::pair<std::string, std::string>> meta{
      {"generator", "sine-cosine"},
      {"n_per_class", std::to_string(p.n_per_class)},
      {"len_min", std::to_string(p.len_min)},
      {"len_max", std::to_string(p.len_max)},
      {"noise_sd", format_double(p.noise_sd)},
      {"seed", std::to_string(p.seed)},
      {"notes", "amplitude 1, one full period, endpoints included"},
  };
  return make_dataset(std::move(sequences), std::move(meta));
}

TwoTaskDataset gen_sine_square_spike(const SineSquareSpikeParams& p) {
  if (p.n_per_class < 2 || p.n_per_class % 2 != 0)
    throw std::domain_error("n_per_class must be even and >= 2 (half of each class is spiked)");
  if (p.length < 20) throw std::domain_error("sequence length must be >= 20");
  if (p.noise_sd < 0.0) throw std::domain_error("noise_sd must be >= 0");

  std::vector<Sequence> by_waveform;
  std::vector<Sequence> by_spike;
  const struct {
    const char* name;
    double (*wave)(double);
  } classes[2] = {{"sine", &sine}, {"square", &square}};
  for (int c = 0; c < 2; ++c) {
    for (int k = 0; k < p.n_per_class; ++k) {
      Rng rng(mix_seed(p.seed, 7'000'000 + static_cast<std::uint64_t>(c) * 100000 + k));
      Eigen::MatrixXd values = sampled_wave(p.length, classes[c].wave, rng, 0.0);
      const bool spiked = k < p.n_per_class / 2;
      if (spiked) {
        // 5 distinct positions take the value 4, before noise
        std::vector<Index> positions(static_cast<std::size_t>(p.length));
        for (Index i = 0; i < p.length; ++i) positions[static_cast<std::size_t>(i)] = i;
        rng.shuffle(positions);
        for (int m = 0; m < 5; ++m) values(0, positions[static_cast<std::size_t>(m)]) = 4.0;
      }
      if (p.noise_sd > 0.0)
        for (Index i = 0; i < p.length; ++i) values(0, i) += rng.normal(0.0, p.noise_sd);

      const std::string id = format_id(classes[c].name, k);
      by_waveform.emplace_back(values, id, classes[c].name);
      by_spike.emplace_back(values, id, spiked ? "spiked" : "clean");
    }
  }
  std::vector<std::pair<std::string, std::string>> meta{
      {"generator", "sine-square-spike"},
      {"n_per_class", std::to_string(p.n_per_class)},
      {"length", std::to_string(p.length)},
      {"noise_sd", format_double(p.noise_sd)},
      {"seed", std::to_string(p.seed)},
      {"notes",
       "amplitude 1, one full period, square = sign of sine, spikes overwrite 5 positions with 4 "
       "before noise"},
  };
  TwoTaskDataset out;
  auto meta_w = meta;
  meta_w.emplace_back("task", "waveform");
  out.waveform = make_dataset(std::move(by_waveform), std::move(meta_w));
  meta.emplace_back("task", "spike");
  out.spike = make_dataset(std::move(by_spike), std::move(meta));
  return out;
}

}  // namespace seqk
