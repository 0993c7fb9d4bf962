#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace skipgram {

// Word table built from a corpus. Words are ordered by descending count,
// ties broken by first occurrence; `total_tokens` counts only retained
// occurrences. Immutable after construction and safe to share across threads.
class Vocabulary {
 public:
  static constexpr std::int32_t kNotFound = -1;

  // Counts whitespace-delimited tokens and keeps those with count >= min_count.
  static Vocabulary build(std::istream& corpus, std::int64_t min_count);
  static Vocabulary build_from_file(const std::string& path, std::int64_t min_count);

  // Builds directly from (word, count) pairs; applies pruning and canonical
  // ordering. `counts[i]` is the count of `words[i]`; first-occurrence order
  // is the order of `words`.
  static Vocabulary from_counts(std::vector<std::string> words,
                                std::vector<std::int64_t> counts,
                                std::int64_t min_count);

  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }

  const std::string& word(std::int32_t index) const { return words_[index]; }
  std::int64_t count(std::int32_t index) const { return counts_[index]; }
  std::span<const std::int64_t> counts() const { return counts_; }

  // Index of `token`, or kNotFound.
  std::int32_t find(std::string_view token) const {
    auto it = index_.find(token);
    return it == index_.end() ? kNotFound : it->second;
  }

  std::int64_t total_tokens() const { return total_tokens_; }
  std::int64_t min_count() const { return min_count_; }

  // Relative corpus frequency of word `index`.
  double frequency(std::int32_t index) const {
    return static_cast<double>(counts_[index]) / static_cast<double>(total_tokens_);
  }

  // One "word<TAB>count" line per word in canonical order, preceded by a
  // "#total_tokens <N>" header line.
  void save(const std::string& path) const;
  static Vocabulary load(const std::string& path);

 private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::vector<std::string> words_;
  std::vector<std::int64_t> counts_;
  std::unordered_map<std::string, std::int32_t, StringHash, std::equal_to<>> index_;
  std::int64_t total_tokens_ = 0;
  std::int64_t min_count_ = 1;
};

}  // namespace skipgram
