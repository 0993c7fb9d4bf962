#include "skipgram/sampler.hpp"

#include <cmath>
#include <vector>

#include "skipgram/errors.hpp"

namespace skipgram {

NoiseSampler::NoiseSampler(const Vocabulary& vocab) {
  if (vocab.empty()) throw ConfigError("noise sampler needs a non-empty vocabulary");
  build(vocab.counts());
}

NoiseSampler::NoiseSampler(std::span<const std::int64_t> counts) {
  if (counts.empty()) throw ConfigError("noise sampler needs a non-empty vocabulary");
  build(counts);
}

void NoiseSampler::build(std::span<const std::int64_t> counts) {
  const std::size_t n = counts.size();
  std::vector<double> weight(n);
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (counts[i] < 1) throw ConfigError("noise sampler counts must be positive");
    weight[i] = std::pow(static_cast<double>(counts[i]), 0.75);
    z += weight[i];
  }

  probability_.resize(n);
  for (std::size_t i = 0; i < n; ++i) probability_[i] = weight[i] / z;

  // Vose alias construction over probabilities scaled by n.
  accept_.assign(n, 1.0);
  alias_.assign(n, 0);
  std::vector<double> scaled(n);
  std::vector<std::int32_t> small, large;
  small.reserve(n);
  large.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = probability_[i] * static_cast<double>(n);
    if (scaled[i] < 1.0)
      small.push_back(static_cast<std::int32_t>(i));
    else
      large.push_back(static_cast<std::int32_t>(i));
  }
  while (!small.empty() && !large.empty()) {
    std::int32_t s = small.back();
    small.pop_back();
    std::int32_t l = large.back();
    large.pop_back();
    accept_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] -= 1.0 - scaled[s];
    if (scaled[l] < 1.0)
      small.push_back(l);
    else
      large.push_back(l);
  }
  // Leftovers in either list have weight 1 up to rounding.
  for (std::int32_t i : large) accept_[i] = 1.0;
  for (std::int32_t i : small) accept_[i] = 1.0;
}

std::int32_t NoiseSampler::sample(Rng& rng) const {
  auto slot = static_cast<std::int32_t>(rng.uniform_below(probability_.size()));
  return rng.uniform() < accept_[slot] ? slot : alias_[slot];
}

std::int32_t NoiseSampler::sample_excluding(std::int32_t exclude, Rng& rng) const {
  if (probability_.size() < 2)
    throw ConfigError("excluding a word requires a vocabulary of at least 2 words");
  std::int32_t w;
  do {
    w = sample(rng);
  } while (w == exclude);
  return w;
}

std::int32_t sample_window(std::int32_t c_max, Rng& rng) {
  if (c_max < 1) throw ConfigError("window must be >= 1");
  return static_cast<std::int32_t>(rng.uniform_below(static_cast<std::uint64_t>(c_max))) + 1;
}

}  // namespace skipgram
