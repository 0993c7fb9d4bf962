#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "skipgram/rng.hpp"
#include "skipgram/vocab.hpp"

namespace skipgram {

// Noise distribution for negative sampling: P(w) = count(w)^{3/4} / Z.
// Exact alias-method sampler; immutable after construction and safe to share
// across threads (each caller owns its Rng).
class NoiseSampler {
 public:
  explicit NoiseSampler(const Vocabulary& vocab);
  explicit NoiseSampler(std::span<const std::int64_t> counts);

  std::size_t size() const { return probability_.size(); }

  // Exact sampling probability of word `w` (count^{3/4} / Z).
  double probability(std::int32_t w) const { return probability_[w]; }

  std::int32_t sample(Rng& rng) const;

  // Draws from P_n, redrawing while the result equals `exclude`. Requires at
  // least 2 words.
  std::int32_t sample_excluding(std::int32_t exclude, Rng& rng) const;

 private:
  void build(std::span<const std::int64_t> counts);

  std::vector<double> probability_;  // exact per-word probability
  std::vector<double> accept_;       // alias acceptance thresholds
  std::vector<std::int32_t> alias_;
};

// Effective half-window for one center word: uniform on {1, ..., c_max}.
std::int32_t sample_window(std::int32_t c_max, Rng& rng);

}  // namespace skipgram
