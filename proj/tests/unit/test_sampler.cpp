#include <doctest.h>

#include <cmath>
#include <vector>

#include "skipgram/errors.hpp"
#include "skipgram/rng.hpp"
#include "skipgram/sampler.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace skipgram;

TEST_SUITE_BEGIN("sampler");

TEST_CASE("counts {16, 81} give probabilities {8/35, 27/35}") {
  std::int64_t counts[] = {81, 16};  // canonical order, descending
  NoiseSampler sampler{std::span<const std::int64_t>(counts)};
  CHECK(sampler.probability(0) == doctest::Approx(27.0 / 35.0).epsilon(1e-12));
  CHECK(sampler.probability(1) == doctest::Approx(8.0 / 35.0).epsilon(1e-12));

  Rng rng(3);
  std::int64_t hits[2] = {0, 0};
  const int draws = 1000000;
  for (int i = 0; i < draws; ++i) ++hits[sampler.sample(rng)];
  CHECK(std::abs(static_cast<double>(hits[0]) / draws - 27.0 / 35.0) < 0.005);
  CHECK(std::abs(static_cast<double>(hits[1]) / draws - 8.0 / 35.0) < 0.005);
}

TEST_CASE("equal counts give uniform probabilities") {
  std::vector<std::int64_t> counts(10, 7);
  NoiseSampler sampler{std::span<const std::int64_t>(counts)};
  for (std::int32_t w = 0; w < 10; ++w)
    CHECK(sampler.probability(w) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("single word has probability 1") {
  std::int64_t counts[] = {5};
  NoiseSampler sampler{std::span<const std::int64_t>(counts)};
  CHECK(sampler.probability(0) == 1.0);
  Rng rng(1);
  CHECK(sampler.sample(rng) == 0);
}

TEST_CASE("exclusion always returns the other word of a 2-word vocabulary") {
  std::int64_t counts[] = {1, 1};
  NoiseSampler sampler{std::span<const std::int64_t>(counts)};
  Rng rng(17);
  for (int i = 0; i < 200; ++i) CHECK(sampler.sample_excluding(0, rng) == 1);
}

TEST_CASE("exclusion never returns the excluded index") {
  std::vector<std::int64_t> counts = {100, 50, 20, 10, 5};
  NoiseSampler sampler{std::span<const std::int64_t>(counts)};
  Rng rng(23);
  for (int i = 0; i < 20000; ++i) CHECK(sampler.sample_excluding(0, rng) != 0);
}

TEST_CASE("fixed seed reproduces the draw sequence") {
  std::vector<std::int64_t> counts = {9, 5, 3, 1};
  NoiseSampler sampler{std::span<const std::int64_t>(counts)};
  Rng r1(77), r2(77);
  for (int i = 0; i < 1000; ++i) CHECK(sampler.sample(r1) == sampler.sample(r2));
}

TEST_CASE("noise draws pass chi-square against count^{3/4}/Z on a Zipfian vocabulary") {
  const std::size_t vocab_size = 1000;
  auto weights = synthetic::zipf_weights(vocab_size, 1.0);
  std::vector<std::int64_t> counts(vocab_size);
  for (std::size_t i = 0; i < vocab_size; ++i)
    counts[i] = std::max<std::int64_t>(1, static_cast<std::int64_t>(weights[i] * 1e6));

  NoiseSampler sampler{std::span<const std::int64_t>(counts)};
  const std::int64_t draws = 1000000;
  std::vector<std::int64_t> observed(vocab_size, 0);
  Rng rng(2024);
  for (std::int64_t i = 0; i < draws; ++i) ++observed[sampler.sample(rng)];

  std::vector<double> expected(vocab_size);
  double min_expected = 1e18;
  for (std::size_t w = 0; w < vocab_size; ++w) {
    expected[w] = sampler.probability(static_cast<std::int32_t>(w)) * static_cast<double>(draws);
    min_expected = std::min(min_expected, expected[w]);
  }
  CHECK(min_expected >= 5.0);  // chi-square validity

  // Upper critical value of chi-square with 999 dof at significance 1e-3.
  const double critical = 1142.848;
  CHECK(oracles::chi_square_statistic(observed, expected) < critical);
}

TEST_CASE("sample_window") {
  SUBCASE("c_max 1 always returns 1") {
    Rng rng(5);
    for (int i = 0; i < 100; ++i) CHECK(sample_window(1, rng) == 1);
  }
  SUBCASE("c_max 5 is uniform: each value 20000 +- 600 over 1e5 draws") {
    Rng rng(6);
    std::int64_t hits[6] = {0};
    for (int i = 0; i < 100000; ++i) {
      int b = sample_window(5, rng);
      REQUIRE(b >= 1);
      REQUIRE(b <= 5);
      ++hits[b];
    }
    for (int b = 1; b <= 5; ++b) {
      CHECK(hits[b] > 20000 - 600);
      CHECK(hits[b] < 20000 + 600);
    }
  }
  SUBCASE("fixed seed reproduces the sequence") {
    Rng r1(9), r2(9);
    for (int i = 0; i < 1000; ++i) CHECK(sample_window(7, r1) == sample_window(7, r2));
  }
  SUBCASE("invalid c_max is rejected") {
    Rng rng(1);
    CHECK_THROWS_AS(sample_window(0, rng), ConfigError);
  }
}

TEST_CASE("empty vocabulary is rejected") {
  CHECK_THROWS_AS(NoiseSampler{std::span<const std::int64_t>{}}, ConfigError);
}

TEST_SUITE_END();
