#include <doctest.h>

#include <cmath>
#include <sstream>

#include "skipgram/errors.hpp"
#include "skipgram/rng.hpp"
#include "skipgram/subsample.hpp"
#include "skipgram/tokenizer.hpp"
#include "skipgram/vocab.hpp"
#include "support/synthetic.hpp"

using namespace skipgram;

TEST_SUITE_BEGIN("corpus");

TEST_CASE("tokenizer splits on whitespace, one sentence per line") {
  std::istringstream in("a  b\tc\r\nd\n\n  \ne f\n");
  SentenceReader reader(in);
  std::vector<std::string> s;

  REQUIRE(reader.next(s));
  CHECK(s == std::vector<std::string>{"a", "b", "c"});
  REQUIRE(reader.next(s));
  CHECK(s == std::vector<std::string>{"d"});
  REQUIRE(reader.next(s));
  CHECK(s == std::vector<std::string>{"e", "f"});
  CHECK_FALSE(reader.next(s));
}

TEST_CASE("tokenizer is deterministic and never emits whitespace") {
  std::string text = "some words\twith   mixed\n delimiters\r\nand lines\n";
  auto tokenize = [&] {
    std::istringstream in(text);
    SentenceReader reader(in);
    std::vector<std::string> all, s;
    while (reader.next(s)) all.insert(all.end(), s.begin(), s.end());
    return all;
  };
  auto first = tokenize();
  CHECK(first == tokenize());
  for (const auto& token : first) {
    CHECK_FALSE(token.empty());
    for (char c : token) CHECK_FALSE(std::isspace(static_cast<unsigned char>(c)));
  }
}

TEST_CASE("build_vocab counts and prunes") {
  SUBCASE("min_count 1 keeps everything in count order") {
    std::istringstream in("a a b");
    auto v = Vocabulary::build(in, 1);
    REQUIRE(v.size() == 2);
    CHECK(v.word(0) == "a");
    CHECK(v.count(0) == 2);
    CHECK(v.word(1) == "b");
    CHECK(v.count(1) == 1);
    CHECK(v.total_tokens() == 3);
  }
  SUBCASE("min_count 2 prunes and total counts only retained words") {
    std::istringstream in("a a b");
    auto v = Vocabulary::build(in, 2);
    REQUIRE(v.size() == 1);
    CHECK(v.word(0) == "a");
    CHECK(v.total_tokens() == 2);
    CHECK(v.find("b") == Vocabulary::kNotFound);
  }
  SUBCASE("empty stream gives an empty vocabulary, not an error") {
    std::istringstream in("");
    auto v = Vocabulary::build(in, 1);
    CHECK(v.empty());
    CHECK(v.total_tokens() == 0);
  }
  SUBCASE("ties are broken by first occurrence") {
    std::istringstream in("z q z q m");
    auto v = Vocabulary::build(in, 1);
    CHECK(v.word(0) == "z");
    CHECK(v.word(1) == "q");
    CHECK(v.word(2) == "m");
  }
}

TEST_CASE("vocabulary index inverts words and total matches counts") {
  std::istringstream in("c c c b b a d d d d");
  auto v = Vocabulary::build(in, 1);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto idx = static_cast<std::int32_t>(i);
    CHECK(v.find(v.word(idx)) == idx);
    CHECK(v.count(idx) >= v.min_count());
    if (i > 0) CHECK(v.count(idx) <= v.count(idx - 1));
    total += v.count(idx);
  }
  CHECK(total == v.total_tokens());
}

TEST_CASE("build_vocab is idempotent over the retained stream") {
  std::istringstream in("a a a b b c d d e");
  auto v = Vocabulary::build(in, 2);

  // Rebuild from the concatenation of each retained word repeated count times.
  std::string retained;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::int64_t k = 0; k < v.count(static_cast<std::int32_t>(i)); ++k)
      retained += v.word(static_cast<std::int32_t>(i)) + " ";
  std::istringstream again(retained);
  auto v2 = Vocabulary::build(again, 2);

  REQUIRE(v2.size() == v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto idx = static_cast<std::int32_t>(i);
    CHECK(v2.word(idx) == v.word(idx));
    CHECK(v2.count(idx) == v.count(idx));
  }
}

TEST_CASE("vocabulary save/load round trip") {
  synthetic::TempDir dir("vocab");
  std::istringstream in("red red red green green blue");
  auto v = Vocabulary::build(in, 1);
  auto path = dir.file("vocab.txt");
  v.save(path);

  auto loaded = Vocabulary::load(path);
  REQUIRE(loaded.size() == v.size());
  CHECK(loaded.total_tokens() == v.total_tokens());
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto idx = static_cast<std::int32_t>(i);
    CHECK(loaded.word(idx) == v.word(idx));
    CHECK(loaded.count(idx) == v.count(idx));
  }
}

TEST_CASE("vocabulary load rejects malformed files") {
  synthetic::TempDir dir("vocab-bad");
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream out(dir.file(name), std::ios::binary);
    out << content;
    return dir.file(name);
  };
  CHECK_THROWS_AS(Vocabulary::load(write("no-header", "a\t2\n")), ParseError);
  CHECK_THROWS_AS(Vocabulary::load(write("bad-count", "#total_tokens 2\na\tx\n")), ParseError);
  CHECK_THROWS_AS(Vocabulary::load(write("bad-total", "#total_tokens 5\na\t2\n")), ParseError);
  CHECK_THROWS_AS(Vocabulary::load(write("dup", "#total_tokens 4\na\t2\na\t2\n")), ParseError);
  CHECK_THROWS_AS(Vocabulary::load(write("order", "#total_tokens 5\na\t2\nb\t3\n")), ParseError);
  CHECK_THROWS_AS(Vocabulary::load(dir.file("missing")), IoError);
}

TEST_CASE("subsample_discard_prob follows the clamped law") {
  // f == t keeps the word always.
  CHECK(subsample_discard_prob(1, 100000, 1.0 / 100000) == 0.0);
  // f == 4t discards with probability 1/2.
  CHECK(subsample_discard_prob(4, 100000, 1.0 / 100000) == doctest::Approx(0.5).epsilon(1e-12));
  // f = 1e-2, t = 1e-5: frozen from high-precision evaluation.
  CHECK(std::abs(subsample_discard_prob(100, 10000, 1e-5) - 0.9683772233983162) < 1e-6);
  // f < t clamps to zero.
  CHECK(subsample_discard_prob(1, 1000000, 1e-3) == 0.0);
}

TEST_CASE("subsample_discard_prob is monotone in f for fixed t") {
  const double t = 1e-4;
  double previous = -1.0;
  for (std::int64_t count = 1; count <= 100000; count += 997) {
    double p = subsample_discard_prob(count, 100000, t);
    CHECK(p >= previous);
    previous = p;
  }
}

TEST_CASE("subsample_pass") {
  std::istringstream in("x y");
  auto vocab = Vocabulary::build(in, 1);

  SUBCASE("t >= every f keeps the input unchanged") {
    Rng rng(1);
    std::vector<std::int32_t> tokens = {0, 1, 0, 1, 1};
    CHECK(subsample_pass(tokens, vocab, 1.0, rng) == tokens);
  }
  SUBCASE("empty input gives empty output") {
    Rng rng(1);
    CHECK(subsample_pass({}, vocab, 0.5, rng).empty());
  }
  SUBCASE("same seed, same output; order preserved") {
    std::vector<std::int32_t> tokens(1000);
    for (std::size_t i = 0; i < tokens.size(); ++i) tokens[i] = static_cast<std::int32_t>(i % 2);
    Rng r1(42), r2(42);
    auto a = subsample_pass(tokens, vocab, 0.25, r1);
    auto b = subsample_pass(tokens, vocab, 0.25, r2);
    CHECK(a == b);
  }
}

TEST_CASE("subsample_pass keeps about half of an f = 4t word") {
  // One word with relative frequency 4t: binomial(1e5, 0.5), 3 sigma ~ 474.
  std::vector<std::string> words = {"w", "rest"};
  std::vector<std::int64_t> counts = {400, 99600};
  auto vocab = Vocabulary::from_counts(std::move(words), std::move(counts), 1);
  const double t = 400.0 / 100000.0 / 4.0;

  std::vector<std::int32_t> tokens(100000, 0);
  Rng rng(7);
  auto kept = subsample_pass(tokens, vocab, t, rng);
  CHECK(kept.size() > 50000 - 500);
  CHECK(kept.size() < 50000 + 500);
}

TEST_CASE("subsampling preserves frequency ranking in expectation") {
  // Expected kept count for f > t is total * sqrt(t * f): increasing in f,
  // so more frequent words stay more frequent.
  std::vector<std::string> words = {"high", "mid", "low"};
  std::vector<std::int64_t> counts = {60000, 30000, 10000};
  auto vocab = Vocabulary::from_counts(std::move(words), std::move(counts), 1);
  const double t = 1e-3;

  std::vector<std::int32_t> tokens;
  for (std::int32_t w = 0; w < 3; ++w)
    for (std::int64_t i = 0; i < vocab.count(w); ++i) tokens.push_back(w);

  Rng rng(11);
  auto kept = subsample_pass(tokens, vocab, t, rng);
  std::int64_t kept_count[3] = {0, 0, 0};
  for (std::int32_t w : kept) ++kept_count[w];
  CHECK(kept_count[0] > kept_count[1]);
  CHECK(kept_count[1] > kept_count[2]);
}

TEST_SUITE_END();
