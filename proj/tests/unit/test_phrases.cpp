#include <doctest.h>

#include <fstream>
#include <memory>
#include <sstream>

#include "skipgram/errors.hpp"
#include "skipgram/phrases.hpp"
#include "support/synthetic.hpp"

using namespace skipgram;

namespace {

std::shared_ptr<const Vocabulary> vocab_of(const std::string& corpus, std::int64_t min_count) {
  std::istringstream in(corpus);
  return std::make_shared<const Vocabulary>(Vocabulary::build(in, min_count));
}

PhraseModel model_of(const std::string& corpus, double threshold, double delta,
                     std::int64_t min_count = 1) {
  std::istringstream in(corpus);
  return learn_phrases(in, vocab_of(corpus, min_count), threshold, delta);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_SUITE_BEGIN("phrases");

TEST_CASE("score_bigram") {
  CHECK(score_bigram(5, 10, 10, 5.0) == 0.0);          // numerator vanishes at count == delta
  CHECK(score_bigram(100, 10, 10, 0.0) == 1.0);
  CHECK(score_bigram(3, 1000, 1000, 5.0) == doctest::Approx(-2e-6).epsilon(1e-12));
  CHECK_THROWS_AS(score_bigram(1, 0, 5, 0.0), ConfigError);
  CHECK_THROWS_AS(score_bigram(1, 5, 0, 0.0), ConfigError);
}

TEST_CASE("score_bigram is strictly decreasing in delta and in each unigram count") {
  double base = score_bigram(50, 100, 200, 1.0);
  CHECK(score_bigram(50, 100, 200, 2.0) < base);
  CHECK(score_bigram(50, 101, 200, 1.0) < base);
  CHECK(score_bigram(50, 100, 201, 1.0) < base);
}

TEST_CASE("learn_phrases counts adjacent pairs") {
  auto model = model_of("new york new york\n", 0.0, 0.0);
  const auto& v = model.vocab();
  auto new_i = v.find("new");
  auto york_i = v.find("york");
  CHECK(model.bigram_count(new_i, york_i) == 2);
  CHECK(model.bigram_count(york_i, new_i) == 1);
  // Both scores are positive, so both clear a zero threshold.
  CHECK(model.accepted(new_i, york_i));
  CHECK(model.accepted(york_i, new_i));
}

TEST_CASE("an infinite threshold accepts nothing") {
  auto model = model_of("a b a b a b\n", std::numeric_limits<double>::infinity(), 0.0);
  CHECK(model.accepted_count() == 0);
}

TEST_CASE("bigrams never cross sentence boundaries") {
  auto model = model_of("a b\nb a\n", 0.0, 0.0);
  const auto& v = model.vocab();
  CHECK(model.bigram_count(v.find("b"), v.find("b")) == 0);
  CHECK(model.bigram_count(v.find("a"), v.find("a")) == 0);
  CHECK(model.bigram_count(v.find("a"), v.find("b")) == 1);
  CHECK(model.bigram_count(v.find("b"), v.find("a")) == 1);
}

TEST_CASE("apply_phrases merges greedily left to right") {
  auto model = model_of("new york new york\n", 0.0, 0.0);

  SUBCASE("single merge") {
    std::vector<std::string> tokens = {"new", "york", "times"};
    auto merged = apply_phrases(tokens, model);
    CHECK(merged == std::vector<std::string>{"new_york", "times"});
  }
  SUBCASE("unaccepted pairs remain unchanged") {
    auto none = model_of("this is\n", std::numeric_limits<double>::infinity(), 0.0);
    std::vector<std::string> tokens = {"this", "is"};
    CHECK(apply_phrases(tokens, none) == tokens);
  }
  SUBCASE("merge consumes both tokens: no overlapping merges") {
    // (new,york) and (york,new) are both accepted; greedy scanning merges
    // non-overlapping pairs from the left.
    std::vector<std::string> tokens = {"new", "york", "new", "york"};
    auto merged = apply_phrases(tokens, model);
    CHECK(merged == std::vector<std::string>{"new_york", "new_york"});
  }
}

TEST_CASE("apply_phrases length bookkeeping and joiner round trip") {
  auto model = model_of("a b a b c a b\n", 0.0, 0.0);
  std::vector<std::string> tokens = {"a", "b", "c", "a", "b", "a", "c"};
  auto merged = apply_phrases(tokens, model);

  std::uint64_t merges = 0;
  std::vector<std::string> recovered;
  for (const auto& token : merged) {
    std::size_t start = 0, sep;
    std::size_t parts = 0;
    while ((sep = token.find('_', start)) != std::string::npos) {
      recovered.push_back(token.substr(start, sep - start));
      start = sep + 1;
      ++parts;
    }
    recovered.push_back(token.substr(start));
    merges += parts;
  }
  CHECK(merged.size() + merges == tokens.size());  // never grows
  CHECK(recovered == tokens);                      // splitting on '_' recovers the stream
}

TEST_CASE("run_phrase_passes") {
  synthetic::TempDir dir("phrases");
  auto corpus = dir.file("corpus.txt");
  {
    std::ofstream out(corpus, std::ios::binary);
    for (int i = 0; i < 30; ++i) out << "new york times\n";
    for (int i = 0; i < 30; ++i) out << "filler tokens pad the line\n";
  }

  SUBCASE("one pass equals learn + apply") {
    auto out1 = dir.file("pass1.txt");
    auto result = run_phrase_passes(corpus, out1, 1, 1e-4, 0.5, 0.0, 1);
    REQUIRE(result.passes.size() == 1);

    auto vocab = std::make_shared<const Vocabulary>(Vocabulary::build_from_file(corpus, 1));
    std::ifstream in(corpus, std::ios::binary);
    auto model = learn_phrases(in, vocab, 1e-4, 0.0);
    std::string line = slurp(out1);
    // (new,york) scores 30/(30*30) >> 1e-4; (york,times) is shadowed by the
    // greedy merge of (new,york).
    CHECK(line.find("new_york times\n") != std::string::npos);
    CHECK(model.accepted(vocab->find("new"), vocab->find("york")));
  }

  SUBCASE("two passes build the trigram") {
    auto out2 = dir.file("pass2.txt");
    auto result = run_phrase_passes(corpus, out2, 2, 1e-4, 1.0, 0.0, 1);
    REQUIRE(result.passes.size() == 2);
    CHECK(slurp(out2).find("new_york_times\n") != std::string::npos);
    CHECK(result.passes[1].merges > 0);
  }

  SUBCASE("decay 1 keeps the threshold constant") {
    auto out = dir.file("decay.txt");
    auto result = run_phrase_passes(corpus, out, 3, 0.5, 1.0, 0.0, 1);
    for (const auto& pass : result.passes) CHECK(pass.threshold == 0.5);
  }

  SUBCASE("intermediate pass files are cleaned up") {
    auto out = dir.file("multi.txt");
    run_phrase_passes(corpus, out, 3, 1e-4, 0.5, 0.0, 1);
    CHECK(std::filesystem::exists(out));
    CHECK_FALSE(std::filesystem::exists(out + ".pass1"));
    CHECK_FALSE(std::filesystem::exists(out + ".pass2"));
  }

  SUBCASE("invalid pass counts are rejected") {
    CHECK_THROWS_AS(run_phrase_passes(corpus, dir.file("x"), 0, 1, 0.5, 0, 1), ConfigError);
    CHECK_THROWS_AS(run_phrase_passes(corpus, dir.file("x"), 9, 1, 0.5, 0, 1), ConfigError);
  }
}

TEST_CASE("phrase table export is sorted by descending score") {
  auto model = model_of("a b a b a b c d c d e e\n", 0.0, 0.0);
  std::ostringstream out;
  model.export_table(out);
  std::istringstream lines(out.str());
  std::string line;
  double previous = std::numeric_limits<double>::infinity();
  int rows = 0;
  while (std::getline(lines, line)) {
    auto last_tab = line.rfind('\t');
    REQUIRE(last_tab != std::string::npos);
    double score = std::stod(line.substr(last_tab + 1));
    CHECK(score <= previous);
    previous = score;
    ++rows;
    CHECK(std::count(line.begin(), line.end(), '\t') == 3);
  }
  CHECK(rows == static_cast<int>(model.accepted_count()));
}

TEST_CASE("bigram counts never exceed the constituent unigram counts") {
  auto model = model_of("p q p q r p q r r\n", -1e9, 0.0);
  const auto& v = model.vocab();
  for (std::int32_t i = 0; i < static_cast<std::int32_t>(v.size()); ++i)
    for (std::int32_t j = 0; j < static_cast<std::int32_t>(v.size()); ++j)
      CHECK(model.bigram_count(i, j) <= std::min(v.count(i), v.count(j)));
}

TEST_SUITE_END();
