#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>

#include "skipgram/huffman.hpp"
#include "skipgram/model.hpp"
#include "skipgram/vocab.hpp"

namespace skipgram {

struct TrainConfig {
  std::int32_t window = 5;          // max half-window c; the effective window is drawn per center
  bool sentence_window = false;     // use the entire sentence as context
  std::int32_t negatives = 5;       // k (negative sampling only)
  double subsample = 1e-5;          // t; 0 disables subsampling
  std::int32_t dim = 300;
  std::int32_t epochs = 5;
  double initial_lr = 0.025;
  double min_lr_fraction = 0.01;    // lr floor as a fraction of initial_lr
  std::int32_t workers = 1;
  std::uint64_t seed = 1;
  Objective objective = Objective::kNegativeSampling;
  std::int64_t report_interval = 100000;  // progress line every N tokens; 0 silences
};

struct TrainStats {
  std::uint64_t trained_pairs = 0;     // (center, context) SGD steps taken
  std::uint64_t processed_tokens = 0;  // in-vocabulary occurrences seen (pre-subsampling)
  std::uint64_t discarded_tokens = 0;  // occurrences removed by subsampling
  double seconds = 0.0;                // wall-clock spent inside the worker loop
};

struct TrainResult {
  EmbeddingModel model;
  TrainStats stats;
};

// Numerically stable logistic function; no overflow for |x| up to ~1e3.
template <typename T>
T sigmoid(T x);

// Full softmax p(w_O | w_I), max-shifted. Reference implementation for
// desk-scale checks; cost is proportional to the vocabulary size.
template <typename T>
double full_softmax_prob(const EmbeddingModelT<T>& model, std::int32_t w_o, std::int32_t w_i);

// Hierarchical softmax p(w | w_I): product over the root-to-leaf path of
// sigma(sign_j * v'_{n_j} . v_{w_I}), sign +1 for code bit 0 and -1 for bit 1.
template <typename T>
double hs_prob(const EmbeddingModelT<T>& model, const HuffmanCoding& coding,
               std::int32_t w, std::int32_t w_i);

// Negative-sampling objective for one pair:
// log sigma(v'_{w_O} . v_{w_I}) + sum_i log sigma(-v'_{w_i} . v_{w_I}).
template <typename T>
double neg_objective(const EmbeddingModelT<T>& model, std::int32_t w_o, std::int32_t w_i,
                     std::span<const std::int32_t> negatives);

// One gradient-ascent step on the negative-sampling objective. The input-row
// update is accumulated across the positive and all negatives and applied
// once, so every output row sees the pre-update input vector.
template <typename T>
void neg_step(EmbeddingModelT<T>& model, std::int32_t w_o, std::int32_t w_i,
              std::span<const std::int32_t> negatives, T lr);

// One gradient-ascent step on log hs_prob(w_o, w_i). Touches the L(w_o)-1
// inner rows on the path plus the input row (buffered as in neg_step).
template <typename T>
void hs_step(EmbeddingModelT<T>& model, const HuffmanCoding& coding, std::int32_t w_o,
             std::int32_t w_i, T lr);

// Streams the corpus sentence-by-sentence for `epochs` epochs and applies
// per-pair SGD with subsampling, per-center dynamic windows and linear
// learning-rate decay over processed tokens. Workers read disjoint byte
// shards and update the shared tables without synchronization; results are
// bit-reproducible for workers == 1 and a fixed seed.
//
// `resume_from`, when given, continues training that model instead of
// initializing a fresh one (its vocabulary and dim must match).
TrainResult train(const std::string& corpus_path, std::shared_ptr<const Vocabulary> vocab,
                  const TrainConfig& config, const EmbeddingModel* resume_from = nullptr);

}  // namespace skipgram
