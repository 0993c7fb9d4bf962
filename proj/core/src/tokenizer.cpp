#include "skipgram/tokenizer.hpp"

#include <cctype>

#include "skipgram/errors.hpp"

namespace skipgram {

namespace {

inline bool is_delim(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

}  // namespace

bool SentenceReader::next(std::vector<std::string>& out) {
  out.clear();
  while (out.empty()) {
    sentence_offset_ = offset_;
    if (!std::getline(*in_, line_)) {
      if (in_->bad()) throw IoError("corpus read failed", offset_);
      return false;
    }
    // getline consumed the line plus (unless at EOF) one '\n'.
    offset_ += line_.size() + (in_->eof() ? 0 : 1);

    std::size_t i = 0;
    const std::size_t n = line_.size();
    while (i < n) {
      while (i < n && is_delim(line_[i])) ++i;
      std::size_t start = i;
      while (i < n && !is_delim(line_[i])) ++i;
      if (i > start) out.emplace_back(line_, start, i - start);
    }
  }
  return true;
}

}  // namespace skipgram
