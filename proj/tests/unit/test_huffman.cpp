#include <doctest.h>

#include <set>
#include <sstream>
#include <string>

#include "skipgram/errors.hpp"
#include "skipgram/huffman.hpp"
#include "skipgram/rng.hpp"
#include "support/oracles.hpp"

using namespace skipgram;

namespace {

std::vector<std::size_t> code_lengths(const HuffmanCoding& coding) {
  std::vector<std::size_t> lengths;
  lengths.reserve(coding.codes.size());
  for (const auto& code : coding.codes) lengths.push_back(code.size());
  return lengths;
}

std::int64_t total_cost(std::span<const std::int64_t> counts, const HuffmanCoding& coding) {
  std::int64_t cost = 0;
  for (std::size_t i = 0; i < counts.size(); ++i)
    cost += counts[i] * static_cast<std::int64_t>(coding.codes[i].size());
  return cost;
}

std::string code_string(const HuffmanCoding& coding, std::size_t w) {
  std::string s;
  for (std::uint8_t b : coding.codes[w]) s += static_cast<char>('0' + b);
  return s;
}

}  // namespace

TEST_SUITE_BEGIN("huffman");

TEST_CASE("two equal counts get one-bit codes") {
  std::int64_t counts[] = {1, 1};
  auto coding = build_huffman(counts);
  CHECK(coding.codes[0].size() == 1);
  CHECK(coding.codes[1].size() == 1);
  CHECK(coding.inner_count == 1);
  CHECK(coding.points[0] == std::vector<std::int32_t>{0});
  CHECK(coding.points[1] == std::vector<std::int32_t>{0});
}

TEST_CASE("known length profiles") {
  // Frozen from the brute-force optimal prefix code oracle.
  {
    std::int64_t counts[] = {5, 3, 1, 1};
    auto lengths = code_lengths(build_huffman(counts));
    CHECK(lengths == std::vector<std::size_t>{1, 2, 3, 3});
    CHECK(total_cost(counts, build_huffman(counts)) == oracles::optimal_prefix_code_cost(counts));
  }
  {
    std::int64_t counts[] = {8, 4, 2, 1, 1};
    auto lengths = code_lengths(build_huffman(counts));
    CHECK(lengths == std::vector<std::size_t>{1, 2, 3, 4, 4});
    CHECK(total_cost(counts, build_huffman(counts)) == oracles::optimal_prefix_code_cost(counts));
  }
}

TEST_CASE("matches the brute-force optimum for random small vocabularies") {
  Rng rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    auto n = static_cast<std::size_t>(rng.uniform_between(2, 8));
    std::vector<std::int64_t> counts(n);
    for (auto& c : counts) c = rng.uniform_between(1, 50);
    std::sort(counts.begin(), counts.end(), std::greater<>());

    auto coding = build_huffman(counts);
    CHECK(total_cost(counts, coding) == oracles::optimal_prefix_code_cost(counts));
    CHECK(oracles::kraft_sum_is_one(code_lengths(coding)));
  }
}

TEST_CASE("codes are prefix free") {
  Rng rng(99);
  std::vector<std::int64_t> counts(30);
  for (auto& c : counts) c = rng.uniform_between(1, 1000);
  std::sort(counts.begin(), counts.end(), std::greater<>());
  auto coding = build_huffman(counts);

  std::set<std::string> codes;
  for (std::size_t w = 0; w < counts.size(); ++w) codes.insert(code_string(coding, w));
  CHECK(codes.size() == counts.size());
  for (const auto& a : codes)
    for (const auto& b : codes)
      if (a != b) CHECK(b.rfind(a, 0) != 0);
}

TEST_CASE("structure invariants") {
  std::int64_t counts[] = {40, 30, 20, 7, 2, 1};
  auto coding = build_huffman(counts);
  CHECK(coding.inner_count == 5);
  for (std::size_t w = 0; w < 6; ++w) {
    CHECK(coding.points[w].size() == coding.codes[w].size());
    CHECK(coding.points[w].front() == 0);  // every path starts at the root
    for (std::int32_t p : coding.points[w]) {
      CHECK(p >= 0);
      CHECK(p < coding.inner_count);
    }
  }
  // Higher counts never get longer codes.
  for (std::size_t w = 1; w < 6; ++w)
    CHECK(coding.codes[w - 1].size() <= coding.codes[w].size());
}

TEST_CASE("average code length stays within the log bound") {
  Rng rng(5);
  std::vector<std::int64_t> counts(128);
  for (auto& c : counts) c = rng.uniform_between(1, 10000);
  std::sort(counts.begin(), counts.end(), std::greater<>());
  auto coding = build_huffman(counts);

  double average = 0;
  for (const auto& code : coding.codes) average += static_cast<double>(code.size());
  average /= static_cast<double>(counts.size());
  CHECK(average <= std::ceil(std::log2(128.0)) + 1.0);
}

TEST_CASE("identical counts give bit-identical codes across builds") {
  std::vector<std::int64_t> counts = {9, 9, 7, 7, 7, 3, 3, 1, 1, 1};
  auto a = build_huffman(counts);
  auto b = build_huffman(counts);
  CHECK(a.codes == b.codes);
  CHECK(a.points == b.points);
}

TEST_CASE("skewed counts produce codes longer than 64 bits") {
  // Fibonacci-like counts force a maximally unbalanced tree.
  std::vector<std::int64_t> counts;
  std::int64_t a = 1, b = 1;
  for (int i = 0; i < 80; ++i) {
    counts.push_back(a);
    std::int64_t next = a + b;
    a = b;
    b = next;
  }
  std::sort(counts.begin(), counts.end(), std::greater<>());
  auto coding = build_huffman(counts);
  std::size_t longest = 0;
  for (const auto& code : coding.codes) longest = std::max(longest, code.size());
  CHECK(longest == 79);
  CHECK(oracles::kraft_sum_is_one(code_lengths(coding)));
}

TEST_CASE("single-word vocabulary is rejected") {
  std::int64_t counts[] = {1};
  CHECK_THROWS_AS(build_huffman(counts), ConfigError);
  CHECK_THROWS_AS(build_huffman({}), ConfigError);
}

TEST_CASE("debug dump format") {
  auto vocab = Vocabulary::from_counts({"a", "b", "c"}, {3, 2, 1}, 1);
  auto coding = build_huffman(vocab.counts());
  std::ostringstream out;
  coding.dump(vocab, out);
  std::string text = out.str();
  CHECK(text.find("a\t") == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
  CHECK(text.find('\t') != std::string::npos);
}

TEST_SUITE_END();
