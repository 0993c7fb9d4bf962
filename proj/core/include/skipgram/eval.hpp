#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "skipgram/model.hpp"

namespace skipgram {

// Cosine similarity; both vectors must be non-zero.
double cosine(std::span<const float> a, std::span<const float> b);
double cosine(std::span<const double> a, std::span<const double> b);

struct ScoredWord {
  std::int32_t index = 0;
  std::string word;
  double score = 0.0;
};

// a : b :: c : ?  Ranks the vocabulary by cosine to v_b - v_a + v_c (unit
// vectors), excluding a, b and c; ties broken by lower vocabulary index.
std::vector<ScoredWord> analogy_query(const EmbeddingModel& model, std::string_view a,
                                      std::string_view b, std::string_view c,
                                      std::int32_t top_n);

// Sums the unit vectors of the query tokens and ranks the rest of the
// vocabulary by cosine, excluding the query tokens themselves.
std::vector<ScoredWord> nearest_neighbors(const EmbeddingModel& model,
                                          std::span<const std::string> query,
                                          std::int32_t top_n);

struct AnalogyQuestion {
  std::string a, b, c, d;
};

struct AnalogyCategory {
  std::string name;
  std::vector<AnalogyQuestion> questions;
  // Categories named "gram..." count toward the syntactic aggregate,
  // everything else toward the semantic one.
  bool syntactic() const { return name.rfind("gram", 0) == 0; }
};

// Categorized 4-tuples. File format: lines starting with ": " open a
// category; question lines hold exactly 4 whitespace-separated tokens
// (phrases use underscores).
struct AnalogyDataset {
  std::vector<AnalogyCategory> categories;

  std::size_t question_count() const;
  static AnalogyDataset parse(std::istream& in);
  static AnalogyDataset load(const std::string& path);
};

struct CategoryResult {
  std::string name;
  std::int64_t seen = 0;     // questions with all four tokens in vocabulary
  std::int64_t correct = 0;  // top-ranked token equals d exactly
  std::int64_t oov = 0;      // questions skipped for an out-of-vocabulary token
};

struct AnalogyReport {
  std::vector<CategoryResult> categories;
  CategoryResult syntactic;  // aggregate over "gram*" categories
  CategoryResult semantic;   // aggregate over the rest
  CategoryResult total;

  // Aligned text table plus the machine-readable line
  // "TOTAL <correct> <seen> <oov>".
  void write(std::ostream& out) const;
};

// Scores every question top-1 against d. OOV questions are excluded from the
// denominator and reported separately.
AnalogyReport evaluate_analogy_set(const AnalogyDataset& dataset, const EmbeddingModel& model);

}  // namespace skipgram
