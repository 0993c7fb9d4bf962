#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

namespace skipgram {

// Splits a byte stream into whitespace-delimited tokens, one sentence per
// line. Tokenization is deterministic and never emits a token containing
// whitespace. Blank lines are skipped.
class SentenceReader {
 public:
  // `start_offset` is the absolute byte position of the stream's current
  // read position; it is only used for error reporting and shard bookkeeping.
  explicit SentenceReader(std::istream& in, std::uint64_t start_offset = 0)
      : in_(&in), offset_(start_offset) {}

  // Fills `out` with the next non-empty sentence. Returns false at end of
  // stream. Throws IoError on a read failure.
  bool next(std::vector<std::string>& out);

  // Byte offset of the start of the most recently returned sentence.
  std::uint64_t sentence_offset() const { return sentence_offset_; }

  // Byte offset of the current read position.
  std::uint64_t offset() const { return offset_; }

 private:
  std::istream* in_;
  std::uint64_t offset_ = 0;
  std::uint64_t sentence_offset_ = 0;
  std::string line_;
};

}  // namespace skipgram
