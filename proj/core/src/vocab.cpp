#include "skipgram/vocab.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>

#include "skipgram/errors.hpp"
#include "skipgram/tokenizer.hpp"

namespace skipgram {

namespace {

struct RawEntry {
  std::string word;
  std::int64_t count = 0;
  std::size_t first_seen = 0;
};

Vocabulary finalize(std::vector<RawEntry> entries, std::int64_t min_count) {
  std::erase_if(entries, [&](const RawEntry& e) { return e.count < min_count; });
  std::sort(entries.begin(), entries.end(), [](const RawEntry& a, const RawEntry& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.first_seen < b.first_seen;
  });

  std::vector<std::string> words;
  std::vector<std::int64_t> counts;
  words.reserve(entries.size());
  counts.reserve(entries.size());
  for (auto& e : entries) {
    words.push_back(std::move(e.word));
    counts.push_back(e.count);
  }
  return Vocabulary::from_counts(std::move(words), std::move(counts), min_count);
}

}  // namespace

Vocabulary Vocabulary::build(std::istream& corpus, std::int64_t min_count) {
  if (min_count < 1) throw ConfigError("min_count must be >= 1");

  std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>> seen;
  std::vector<RawEntry> entries;

  SentenceReader reader(corpus);
  std::vector<std::string> sentence;
  while (reader.next(sentence)) {
    for (auto& token : sentence) {
      auto it = seen.find(std::string_view(token));
      if (it == seen.end()) {
        seen.emplace(token, entries.size());
        entries.push_back({std::move(token), 1, entries.size()});
      } else {
        ++entries[it->second].count;
      }
    }
  }
  return finalize(std::move(entries), min_count);
}

Vocabulary Vocabulary::build_from_file(const std::string& path, std::int64_t min_count) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus: " + path, 0);
  return build(in, min_count);
}

Vocabulary Vocabulary::from_counts(std::vector<std::string> words,
                                   std::vector<std::int64_t> counts,
                                   std::int64_t min_count) {
  if (min_count < 1) throw ConfigError("min_count must be >= 1");
  if (words.size() != counts.size())
    throw ConfigError("words/counts size mismatch");

  Vocabulary v;
  v.min_count_ = min_count;
  v.words_.reserve(words.size());
  v.counts_.reserve(counts.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (counts[i] < min_count) continue;
    if (v.index_.contains(std::string_view(words[i])))
      throw ConfigError("duplicate word: " + words[i]);
    v.index_.emplace(words[i], static_cast<std::int32_t>(v.words_.size()));
    v.words_.push_back(std::move(words[i]));
    v.counts_.push_back(counts[i]);
    v.total_tokens_ += counts[i];
  }

  // Canonical order is descending count; callers pass pre-sorted data, so a
  // violation here is a programming or file-format error.
  for (std::size_t i = 1; i < v.counts_.size(); ++i) {
    if (v.counts_[i] > v.counts_[i - 1])
      throw ConfigError("vocabulary counts not in canonical (descending) order");
  }
  return v;
}

void Vocabulary::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open vocabulary file for writing: " + path, 0);
  out << "#total_tokens " << total_tokens_ << '\n';
  for (std::size_t i = 0; i < words_.size(); ++i)
    out << words_[i] << '\t' << counts_[i] << '\n';
  if (!out) throw IoError("vocabulary write failed: " + path, 0);
}

Vocabulary Vocabulary::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open vocabulary file: " + path, 0);

  std::uint64_t offset = 0;
  std::string line;
  if (!std::getline(in, line))
    throw ParseError("empty vocabulary file: " + path, offset);
  const std::string header = "#total_tokens ";
  if (line.rfind(header, 0) != 0)
    throw ParseError("missing #total_tokens header: " + path, offset);
  std::int64_t declared_total = 0;
  {
    const char* first = line.data() + header.size();
    const char* last = line.data() + line.size();
    auto [p, ec] = std::from_chars(first, last, declared_total);
    if (ec != std::errc() || p != last)
      throw ParseError("bad #total_tokens value: " + path, offset);
  }
  offset += line.size() + 1;

  std::vector<std::string> words;
  std::vector<std::int64_t> counts;
  while (std::getline(in, line)) {
    if (line.empty()) {
      offset += 1;
      continue;
    }
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0)
      throw ParseError("expected word<TAB>count: " + path, offset);
    std::int64_t count = 0;
    const char* first = line.data() + tab + 1;
    const char* last = line.data() + line.size();
    auto [p, ec] = std::from_chars(first, last, count);
    if (ec != std::errc() || p != last || count < 1)
      throw ParseError("bad count: " + path, offset);
    words.push_back(line.substr(0, tab));
    counts.push_back(count);
    offset += line.size() + 1;
  }
  if (in.bad()) throw IoError("vocabulary read failed: " + path, offset);

  std::int64_t min_count = counts.empty() ? 1 : *std::min_element(counts.begin(), counts.end());
  Vocabulary v;
  try {
    v = from_counts(std::move(words), std::move(counts), min_count);
  } catch (const ConfigError& e) {
    throw ParseError(std::string(e.what()) + ": " + path, offset);
  }
  if (v.total_tokens() != declared_total)
    throw ParseError("#total_tokens header does not match the sum of counts: " + path, offset);
  return v;
}

}  // namespace skipgram
