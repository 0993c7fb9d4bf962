#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "skipgram/vocab.hpp"

namespace skipgram {

// Binary Huffman code over word counts. For word w, codes[w] holds the path
// bits from the root (0/1 per level) and points[w] the matching inner-node
// indices, root first. Inner node 0 is the root; there are W-1 inner nodes.
//
// Child labeling convention (frozen for reproducibility): when two nodes are
// merged, the one popped first (lower count, earlier creation on ties)
// becomes the bit-0 child.
struct HuffmanCoding {
  std::vector<std::vector<std::uint8_t>> codes;
  std::vector<std::vector<std::int32_t>> points;
  std::int32_t inner_count = 0;

  std::size_t code_length(std::int32_t word) const { return codes[word].size(); }

  // Debug dump: "word<TAB>code-as-01-string<TAB>comma-separated-points".
  void dump(const Vocabulary& vocab, std::ostream& out) const;
};

// Standard Huffman construction: repeatedly merge the two lowest-count nodes.
// Ties prefer the node created earlier; leaves (in input order) precede
// merged nodes of equal count. Requires at least 2 words.
HuffmanCoding build_huffman(std::span<const std::int64_t> counts);

}  // namespace skipgram
