#pragma once

#include <cstdint>
#include <istream>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "skipgram/vocab.hpp"

namespace skipgram {

// Discounted collocation score (count_ij - delta) / (count_i * count_j).
// May be negative. Zero unigram counts are a domain error.
double score_bigram(std::int64_t count_ij, std::int64_t count_i, std::int64_t count_j,
                    double delta);

struct AcceptedBigram {
  std::int32_t first = 0;
  std::int32_t second = 0;
  std::int64_t count = 0;
  double score = 0.0;
};

// Adjacent-pair statistics over one corpus pass plus the accepted set
// (score > threshold). Immutable after construction.
class PhraseModel {
 public:
  static constexpr char kJoiner = '_';

  PhraseModel(std::shared_ptr<const Vocabulary> vocab, double threshold, double delta,
              std::unordered_map<std::uint64_t, std::int64_t> bigram_counts);

  const Vocabulary& vocab() const { return *vocab_; }
  double threshold() const { return threshold_; }
  double delta() const { return delta_; }

  std::int64_t bigram_count(std::int32_t first, std::int32_t second) const;
  double score(std::int32_t first, std::int32_t second) const;
  bool accepted(std::int32_t first, std::int32_t second) const {
    return accepted_.contains(key(first, second));
  }
  std::size_t accepted_count() const { return accepted_.size(); }

  // Accepted bigrams sorted by descending score (ties: higher count, then
  // lower indices).
  std::vector<AcceptedBigram> accepted_bigrams() const;

  // "word_i<TAB>word_j<TAB>count_ij<TAB>score" per accepted bigram, sorted by
  // descending score.
  void export_table(std::ostream& out) const;

  static std::uint64_t key(std::int32_t first, std::int32_t second) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(first)) << 32) |
           static_cast<std::uint32_t>(second);
  }

 private:
  std::shared_ptr<const Vocabulary> vocab_;
  double threshold_;
  double delta_;
  std::unordered_map<std::uint64_t, std::int64_t> bigram_counts_;
  std::unordered_set<std::uint64_t> accepted_;
};

// Counts adjacent in-vocabulary pairs within sentences (never across
// newlines) and returns the model with the accepted set.
PhraseModel learn_phrases(std::istream& corpus, std::shared_ptr<const Vocabulary> vocab,
                          double threshold, double delta);

// Greedy left-to-right merge: an accepted adjacent pair becomes
// "first_second" and the scan advances past both tokens.
std::vector<std::string> apply_phrases(std::span<const std::string> sentence,
                                       const PhraseModel& model);

struct PhrasePassStats {
  double threshold = 0.0;
  std::size_t accepted = 0;      // bigrams above threshold this pass
  std::uint64_t merges = 0;      // merges actually applied to the stream
};

struct PhrasePassResult {
  PhraseModel model;  // model of the final pass
  std::vector<PhrasePassStats> passes;
};

// Runs `passes` learn+rewrite rounds; pass p uses threshold
// initial_threshold * decay^(p-1) and recounts over the previous rewrite.
// The rewritten corpus lands at `output_path`; merged tokens join their
// constituents with '_' and participate in later passes like ordinary words.
PhrasePassResult run_phrase_passes(const std::string& input_path,
                                   const std::string& output_path, std::int32_t passes,
                                   double initial_threshold, double decay, double delta,
                                   std::int64_t min_count);

}  // namespace skipgram
