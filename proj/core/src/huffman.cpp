#include "skipgram/huffman.hpp"

#include <algorithm>
#include <queue>

#include "skipgram/errors.hpp"

namespace skipgram {

HuffmanCoding build_huffman(std::span<const std::int64_t> counts) {
  const std::size_t n = counts.size();
  if (n < 2)
    throw ConfigError("hierarchical softmax needs a vocabulary of at least 2 words");
  for (std::int64_t c : counts)
    if (c < 1) throw ConfigError("huffman counts must be positive");

  // Node ids: 0..n-1 leaves (input order), n..2n-2 merged nodes in creation
  // order. The heap key (count, id) realizes the tie rule: earlier-created
  // nodes win, and leaves precede merged nodes of equal count.
  const std::size_t node_count = 2 * n - 1;
  std::vector<std::int64_t> weight(node_count, 0);
  std::vector<std::size_t> parent(node_count, 0);
  std::vector<std::uint8_t> bit(node_count, 0);

  using Key = std::pair<std::int64_t, std::size_t>;
  std::priority_queue<Key, std::vector<Key>, std::greater<Key>> heap;
  for (std::size_t i = 0; i < n; ++i) {
    weight[i] = counts[i];
    heap.emplace(counts[i], i);
  }

  std::size_t next_id = n;
  while (heap.size() > 1) {
    auto [w0, a] = heap.top();
    heap.pop();
    auto [w1, b] = heap.top();
    heap.pop();
    parent[a] = next_id;
    bit[a] = 0;  // first-popped child is reached by code bit 0
    parent[b] = next_id;
    bit[b] = 1;
    weight[next_id] = w0 + w1;
    heap.emplace(weight[next_id], next_id);
    ++next_id;
  }

  // Merged node with creation rank r becomes inner index n-2-r, so the root
  // (created last) is inner node 0.
  auto inner_index = [n](std::size_t node_id) {
    return static_cast<std::int32_t>(2 * n - 2 - node_id);
  };

  HuffmanCoding coding;
  coding.inner_count = static_cast<std::int32_t>(n - 1);
  coding.codes.resize(n);
  coding.points.resize(n);

  const std::size_t root = node_count - 1;
  for (std::size_t leaf = 0; leaf < n; ++leaf) {
    auto& code = coding.codes[leaf];
    auto& points = coding.points[leaf];
    for (std::size_t node = leaf; node != root; node = parent[node]) {
      code.push_back(bit[node]);
      points.push_back(inner_index(parent[node]));
    }
    std::reverse(code.begin(), code.end());
    std::reverse(points.begin(), points.end());
  }
  return coding;
}

void HuffmanCoding::dump(const Vocabulary& vocab, std::ostream& out) const {
  for (std::size_t w = 0; w < codes.size(); ++w) {
    out << vocab.word(static_cast<std::int32_t>(w)) << '\t';
    for (std::uint8_t b : codes[w]) out << static_cast<char>('0' + b);
    out << '\t';
    for (std::size_t j = 0; j < points[w].size(); ++j) {
      if (j) out << ',';
      out << points[w][j];
    }
    out << '\n';
  }
}

}  // namespace skipgram
