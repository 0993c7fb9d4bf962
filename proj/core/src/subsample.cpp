#include "skipgram/subsample.hpp"

#include <cmath>

#include "skipgram/errors.hpp"

namespace skipgram {

double subsample_discard_prob(std::int64_t count, std::int64_t total_tokens, double t) {
  if (count < 1 || total_tokens < 1 || count > total_tokens)
    throw ConfigError("subsample_discard_prob: need 1 <= count <= total_tokens");
  if (t <= 0.0) throw ConfigError("subsample_discard_prob: t must be positive");
  double f = static_cast<double>(count) / static_cast<double>(total_tokens);
  double p = 1.0 - std::sqrt(t / f);
  return p < 0.0 ? 0.0 : p;
}

SubsampleFilter::SubsampleFilter(const Vocabulary& vocab, double t) : enabled_(t > 0.0) {
  if (!enabled_) return;
  discard_prob_.resize(vocab.size());
  for (std::size_t i = 0; i < vocab.size(); ++i)
    discard_prob_[i] = subsample_discard_prob(vocab.count(static_cast<std::int32_t>(i)),
                                              vocab.total_tokens(), t);
}

std::vector<std::int32_t> subsample_pass(std::span<const std::int32_t> tokens,
                                         const Vocabulary& vocab, double t, Rng& rng) {
  SubsampleFilter filter(vocab, t);
  std::vector<std::int32_t> kept;
  kept.reserve(tokens.size());
  for (std::int32_t w : tokens)
    if (!filter.discard(w, rng)) kept.push_back(w);
  return kept;
}

}  // namespace skipgram
