#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "skipgram/rng.hpp"
#include "skipgram/vocab.hpp"

namespace skipgram {

enum class Objective { kNegativeSampling, kHierarchicalSoftmax, kFullSoftmax };

const char* objective_name(Objective objective);
Objective objective_from_name(const std::string& name);

// Input vector table v_w plus the output table (v'_w per word for negative
// sampling / full softmax, v'_n per inner tree node for hierarchical
// softmax). Training is done on the float instantiation; the double one
// exists for numerical tests.
template <typename T>
class EmbeddingModelT {
 public:
  using value_type = T;

  // Input rows i.i.d. uniform on [-0.5/dim, +0.5/dim), output rows zero,
  // both deterministic under the seed.
  EmbeddingModelT(std::shared_ptr<const Vocabulary> vocab, std::int32_t dim,
                  Objective objective, std::uint64_t seed);

  // Vectors-only model (no output table); used when loading saved vectors.
  EmbeddingModelT(std::shared_ptr<const Vocabulary> vocab, std::int32_t dim,
                  std::vector<T> input_vectors);

  std::int32_t dim() const { return dim_; }
  Objective objective() const { return objective_; }
  std::size_t vocab_size() const { return vocab_->size(); }
  std::size_t output_rows() const { return output_.size() / dim_; }
  bool has_output() const { return !output_.empty(); }

  const Vocabulary& vocab() const { return *vocab_; }
  std::shared_ptr<const Vocabulary> vocab_ptr() const { return vocab_; }

  std::span<T> input_row(std::int32_t i) {
    return {input_.data() + static_cast<std::size_t>(i) * dim_, static_cast<std::size_t>(dim_)};
  }
  std::span<const T> input_row(std::int32_t i) const {
    return {input_.data() + static_cast<std::size_t>(i) * dim_, static_cast<std::size_t>(dim_)};
  }
  std::span<T> output_row(std::int32_t i) {
    return {output_.data() + static_cast<std::size_t>(i) * dim_, static_cast<std::size_t>(dim_)};
  }
  std::span<const T> output_row(std::int32_t i) const {
    return {output_.data() + static_cast<std::size_t>(i) * dim_, static_cast<std::size_t>(dim_)};
  }

  std::span<T> input_data() { return input_; }
  std::span<const T> input_data() const { return input_; }
  std::span<T> output_data() { return output_; }
  std::span<const T> output_data() const { return output_; }

  // True when every entry of both tables is finite.
  bool all_finite() const;

 private:
  std::shared_ptr<const Vocabulary> vocab_;
  std::int32_t dim_ = 0;
  Objective objective_ = Objective::kNegativeSampling;
  std::vector<T> input_;
  std::vector<T> output_;
};

using EmbeddingModel = EmbeddingModelT<float>;

extern template class EmbeddingModelT<float>;
extern template class EmbeddingModelT<double>;

enum class VectorFormat { kText, kBinary };

// Interchange formats for the input vectors only.
//
// Text:   header "W D\n", then one "word v1 v2 ... vD\n" line per word.
// Binary: ASCII header "W D\n", then per word: the word's bytes, one 0x20
//         space, D IEEE-754 32-bit little-endian values, one 0x0A newline.
void save_vectors(const EmbeddingModel& model, const std::string& path, VectorFormat format);
EmbeddingModel load_vectors(const std::string& path, VectorFormat format);

// Versioned checkpoint container holding both tables and the vocabulary,
// for resumable training. Starts with the 8-byte magic "SGCKPT\0\1".
void save_checkpoint(const EmbeddingModel& model, const std::string& path);
EmbeddingModel load_checkpoint(const std::string& path);

}  // namespace skipgram
