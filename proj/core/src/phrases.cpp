#include "skipgram/phrases.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>

#include "skipgram/errors.hpp"
#include "skipgram/tokenizer.hpp"

namespace skipgram {

double score_bigram(std::int64_t count_ij, std::int64_t count_i, std::int64_t count_j,
                    double delta) {
  if (count_i <= 0 || count_j <= 0)
    throw ConfigError("score_bigram: unigram counts must be positive");
  return (static_cast<double>(count_ij) - delta) /
         (static_cast<double>(count_i) * static_cast<double>(count_j));
}

PhraseModel::PhraseModel(std::shared_ptr<const Vocabulary> vocab, double threshold, double delta,
                         std::unordered_map<std::uint64_t, std::int64_t> bigram_counts)
    : vocab_(std::move(vocab)),
      threshold_(threshold),
      delta_(delta),
      bigram_counts_(std::move(bigram_counts)) {
  if (delta_ < 0) throw ConfigError("delta must be >= 0");
  for (const auto& [k, count] : bigram_counts_) {
    auto first = static_cast<std::int32_t>(k >> 32);
    auto second = static_cast<std::int32_t>(k & 0xffffffffu);
    if (score_bigram(count, vocab_->count(first), vocab_->count(second), delta_) > threshold_)
      accepted_.insert(k);
  }
}

std::int64_t PhraseModel::bigram_count(std::int32_t first, std::int32_t second) const {
  auto it = bigram_counts_.find(key(first, second));
  return it == bigram_counts_.end() ? 0 : it->second;
}

double PhraseModel::score(std::int32_t first, std::int32_t second) const {
  return score_bigram(bigram_count(first, second), vocab_->count(first), vocab_->count(second),
                      delta_);
}

std::vector<AcceptedBigram> PhraseModel::accepted_bigrams() const {
  std::vector<AcceptedBigram> out;
  out.reserve(accepted_.size());
  for (std::uint64_t k : accepted_) {
    AcceptedBigram b;
    b.first = static_cast<std::int32_t>(k >> 32);
    b.second = static_cast<std::int32_t>(k & 0xffffffffu);
    b.count = bigram_counts_.at(k);
    b.score = score(b.first, b.second);
    out.push_back(b);
  }
  std::sort(out.begin(), out.end(), [](const AcceptedBigram& a, const AcceptedBigram& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.count != b.count) return a.count > b.count;
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  return out;
}

void PhraseModel::export_table(std::ostream& out) const {
  for (const auto& b : accepted_bigrams()) {
    char score[64];
    std::snprintf(score, sizeof(score), "%.8g", b.score);
    out << vocab_->word(b.first) << '\t' << vocab_->word(b.second) << '\t' << b.count << '\t'
        << score << '\n';
  }
}

PhraseModel learn_phrases(std::istream& corpus, std::shared_ptr<const Vocabulary> vocab,
                          double threshold, double delta) {
  std::unordered_map<std::uint64_t, std::int64_t> bigrams;
  SentenceReader reader(corpus);
  std::vector<std::string> sentence;
  while (reader.next(sentence)) {
    std::int32_t prev = Vocabulary::kNotFound;
    for (const auto& token : sentence) {
      std::int32_t w = vocab->find(token);
      if (w == Vocabulary::kNotFound) continue;  // pruned words are treated as absent
      if (prev != Vocabulary::kNotFound) ++bigrams[PhraseModel::key(prev, w)];
      prev = w;
    }
  }
  return PhraseModel(std::move(vocab), threshold, delta, std::move(bigrams));
}

std::vector<std::string> apply_phrases(std::span<const std::string> sentence,
                                       const PhraseModel& model) {
  const Vocabulary& vocab = model.vocab();
  std::vector<std::string> out;
  out.reserve(sentence.size());
  std::size_t i = 0;
  while (i < sentence.size()) {
    if (i + 1 < sentence.size()) {
      std::int32_t a = vocab.find(sentence[i]);
      std::int32_t b = vocab.find(sentence[i + 1]);
      if (a != Vocabulary::kNotFound && b != Vocabulary::kNotFound && model.accepted(a, b)) {
        out.push_back(sentence[i] + PhraseModel::kJoiner + sentence[i + 1]);
        i += 2;
        continue;
      }
    }
    out.push_back(sentence[i]);
    ++i;
  }
  return out;
}

PhrasePassResult run_phrase_passes(const std::string& input_path,
                                   const std::string& output_path, std::int32_t passes,
                                   double initial_threshold, double decay, double delta,
                                   std::int64_t min_count) {
  if (passes < 1 || passes > 8) throw ConfigError("passes must be in [1, 8]");
  if (decay <= 0 || decay > 1) throw ConfigError("decay must be in (0, 1]");

  std::vector<PhrasePassStats> all_stats;
  std::unique_ptr<PhraseModel> final_model;
  std::string current_input = input_path;
  double threshold = initial_threshold;

  for (std::int32_t pass = 1; pass <= passes; ++pass) {
    auto vocab = std::make_shared<Vocabulary>(
        Vocabulary::build_from_file(current_input, min_count));

    std::ifstream count_stream(current_input, std::ios::binary);
    if (!count_stream) throw IoError("cannot open corpus: " + current_input, 0);
    PhraseModel model = learn_phrases(count_stream, vocab, threshold, delta);

    const bool last = pass == passes;
    std::string pass_output =
        last ? output_path : output_path + ".pass" + std::to_string(pass);

    std::ifstream in(current_input, std::ios::binary);
    if (!in) throw IoError("cannot open corpus: " + current_input, 0);
    std::ofstream out(pass_output, std::ios::binary);
    if (!out) throw IoError("cannot open output: " + pass_output, 0);

    PhrasePassStats stats;
    stats.threshold = threshold;
    stats.accepted = model.accepted_count();

    SentenceReader reader(in);
    std::vector<std::string> sentence;
    while (reader.next(sentence)) {
      auto merged = apply_phrases(sentence, model);
      stats.merges += sentence.size() - merged.size();
      for (std::size_t i = 0; i < merged.size(); ++i) {
        if (i) out << ' ';
        out << merged[i];
      }
      out << '\n';
    }
    out.close();
    if (!out) throw IoError("rewrite failed: " + pass_output, 0);
    all_stats.push_back(stats);

    if (current_input != input_path) std::filesystem::remove(current_input);
    current_input = pass_output;
    threshold *= decay;
    if (last) final_model = std::make_unique<PhraseModel>(std::move(model));
  }

  return {std::move(*final_model), std::move(all_stats)};
}

}  // namespace skipgram
