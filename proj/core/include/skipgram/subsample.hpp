#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "skipgram/rng.hpp"
#include "skipgram/vocab.hpp"

namespace skipgram {

// Probability of discarding one occurrence of a word with the given count:
// max(0, 1 - sqrt(t / f)) with f = count / total_tokens. Values of f <= t
// clamp to 0 (the word is always kept).
double subsample_discard_prob(std::int64_t count, std::int64_t total_tokens, double t);

// Per-word discard probabilities precomputed for a vocabulary. t == 0
// disables subsampling entirely.
class SubsampleFilter {
 public:
  SubsampleFilter(const Vocabulary& vocab, double t);

  bool enabled() const { return enabled_; }

  // Independently decides one occurrence of `word`.
  bool discard(std::int32_t word, Rng& rng) const {
    if (!enabled_) return false;
    double p = discard_prob_[word];
    return p > 0.0 && rng.uniform() < p;
  }

  double discard_prob(std::int32_t word) const {
    return enabled_ ? discard_prob_[word] : 0.0;
  }

 private:
  bool enabled_;
  std::vector<double> discard_prob_;
};

// Applies one independent discard decision per occurrence, preserving the
// relative order of kept tokens. Identical seed, identical output.
std::vector<std::int32_t> subsample_pass(std::span<const std::int32_t> tokens,
                                         const Vocabulary& vocab, double t, Rng& rng);

}  // namespace skipgram
