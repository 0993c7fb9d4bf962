#include "skipgram/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "skipgram/errors.hpp"
#include "skipgram/tokenizer.hpp"

namespace skipgram {

namespace {

template <typename T>
double cosine_impl(std::span<const T> a, std::span<const T> b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * b[i];
    na += static_cast<double>(a[i]) * a[i];
    nb += static_cast<double>(b[i]) * b[i];
  }
  if (na == 0 || nb == 0) throw ConfigError("cosine of a zero vector is undefined");
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

// Unit-normalized copy of the input vectors, in double for stable ranking.
struct UnitVectors {
  std::vector<double> rows;
  std::size_t dim = 0;

  explicit UnitVectors(const EmbeddingModel& model)
      : rows(model.vocab_size() * model.dim()), dim(model.dim()) {
    for (std::size_t w = 0; w < model.vocab_size(); ++w) {
      auto src = model.input_row(static_cast<std::int32_t>(w));
      double norm = 0;
      for (float v : src) norm += static_cast<double>(v) * v;
      norm = std::sqrt(norm);
      double* dst = rows.data() + w * dim;
      if (norm == 0) continue;  // zero rows never rank anywhere
      for (std::size_t k = 0; k < dim; ++k) dst[k] = src[k] / norm;
    }
  }

  std::span<const double> row(std::int32_t w) const { return {rows.data() + static_cast<std::size_t>(w) * dim, dim}; }
  bool zero(std::int32_t w) const {
    auto r = row(w);
    return std::all_of(r.begin(), r.end(), [](double v) { return v == 0; });
  }
};

std::int32_t require_word(const Vocabulary& vocab, std::string_view token) {
  std::int32_t w = vocab.find(token);
  if (w == Vocabulary::kNotFound) throw OovError(std::string(token));
  return w;
}

// Ranks all words by cosine(target, v_w), skipping `exclude`; ties prefer the
// lower vocabulary index (partial_sort is stable here because the comparator
// includes the index).
std::vector<ScoredWord> rank_by_cosine(const UnitVectors& unit, const Vocabulary& vocab,
                                       std::span<const double> target,
                                       std::span<const std::int32_t> exclude,
                                       std::int32_t top_n) {
  double target_norm = 0;
  for (double v : target) target_norm += v * v;
  target_norm = std::sqrt(target_norm);
  if (target_norm == 0) throw ConfigError("cosine of a zero vector is undefined");

  std::vector<ScoredWord> scored;
  scored.reserve(vocab.size());
  for (std::size_t w = 0; w < vocab.size(); ++w) {
    auto index = static_cast<std::int32_t>(w);
    if (std::find(exclude.begin(), exclude.end(), index) != exclude.end()) continue;
    double score;
    if (unit.zero(index)) {
      score = -std::numeric_limits<double>::infinity();
    } else {
      auto row = unit.row(index);
      double dot = 0;
      for (std::size_t k = 0; k < row.size(); ++k) dot += row[k] * target[k];
      score = dot / target_norm;  // rows are unit vectors already
    }
    scored.push_back({index, {}, score});
  }

  auto better = [](const ScoredWord& a, const ScoredWord& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.index < b.index;
  };
  std::size_t keep = std::min<std::size_t>(scored.size(), static_cast<std::size_t>(top_n));
  std::partial_sort(scored.begin(), scored.begin() + keep, scored.end(), better);
  scored.resize(keep);
  for (auto& s : scored) s.word = vocab.word(s.index);
  return scored;
}

std::vector<double> analogy_target(const UnitVectors& unit, std::int32_t a, std::int32_t b,
                                   std::int32_t c) {
  std::vector<double> target(unit.dim);
  auto va = unit.row(a);
  auto vb = unit.row(b);
  auto vc = unit.row(c);
  for (std::size_t k = 0; k < unit.dim; ++k) target[k] = vb[k] - va[k] + vc[k];
  return target;
}

}  // namespace

double cosine(std::span<const float> a, std::span<const float> b) { return cosine_impl(a, b); }
double cosine(std::span<const double> a, std::span<const double> b) { return cosine_impl(a, b); }

std::vector<ScoredWord> analogy_query(const EmbeddingModel& model, std::string_view a,
                                      std::string_view b, std::string_view c,
                                      std::int32_t top_n) {
  const Vocabulary& vocab = model.vocab();
  std::int32_t ia = require_word(vocab, a);
  std::int32_t ib = require_word(vocab, b);
  std::int32_t ic = require_word(vocab, c);
  UnitVectors unit(model);
  auto target = analogy_target(unit, ia, ib, ic);
  std::int32_t exclude[] = {ia, ib, ic};
  return rank_by_cosine(unit, vocab, target, exclude, top_n);
}

std::vector<ScoredWord> nearest_neighbors(const EmbeddingModel& model,
                                          std::span<const std::string> query,
                                          std::int32_t top_n) {
  if (query.empty()) throw ConfigError("nearest_neighbors needs at least one query token");
  const Vocabulary& vocab = model.vocab();
  UnitVectors unit(model);

  std::vector<std::int32_t> exclude;
  std::vector<double> target(unit.dim, 0.0);
  for (const auto& token : query) {
    std::int32_t w = require_word(vocab, token);
    exclude.push_back(w);
    auto row = unit.row(w);
    for (std::size_t k = 0; k < unit.dim; ++k) target[k] += row[k];
  }
  return rank_by_cosine(unit, vocab, target, exclude, top_n);
}

std::size_t AnalogyDataset::question_count() const {
  std::size_t n = 0;
  for (const auto& c : categories) n += c.questions.size();
  return n;
}

AnalogyDataset AnalogyDataset::parse(std::istream& in) {
  AnalogyDataset dataset;
  SentenceReader reader(in);
  std::vector<std::string> tokens;
  while (reader.next(tokens)) {
    if (tokens[0] == ":") {
      if (tokens.size() != 2)
        throw ParseError("category line must be ': name'", reader.sentence_offset());
      dataset.categories.push_back({tokens[1], {}});
      continue;
    }
    if (tokens.size() != 4)
      throw ParseError("analogy question must have exactly 4 tokens",
                       reader.sentence_offset());
    if (dataset.categories.empty()) dataset.categories.push_back({"default", {}});
    dataset.categories.back().questions.push_back(
        {std::move(tokens[0]), std::move(tokens[1]), std::move(tokens[2]), std::move(tokens[3])});
  }
  if (dataset.question_count() == 0) throw ParseError("analogy dataset has no questions", 0);
  return dataset;
}

AnalogyDataset AnalogyDataset::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open analogy dataset: " + path, 0);
  return parse(in);
}

AnalogyReport evaluate_analogy_set(const AnalogyDataset& dataset, const EmbeddingModel& model) {
  const Vocabulary& vocab = model.vocab();
  UnitVectors unit(model);

  AnalogyReport report;
  report.syntactic.name = "syntactic";
  report.semantic.name = "semantic";
  report.total.name = "total";

  for (const auto& category : dataset.categories) {
    CategoryResult result;
    result.name = category.name;
    for (const auto& q : category.questions) {
      std::int32_t ia = vocab.find(q.a);
      std::int32_t ib = vocab.find(q.b);
      std::int32_t ic = vocab.find(q.c);
      std::int32_t id = vocab.find(q.d);
      if (ia == Vocabulary::kNotFound || ib == Vocabulary::kNotFound ||
          ic == Vocabulary::kNotFound || id == Vocabulary::kNotFound) {
        ++result.oov;
        continue;
      }
      ++result.seen;
      auto target = analogy_target(unit, ia, ib, ic);
      std::int32_t exclude[] = {ia, ib, ic};
      auto top = rank_by_cosine(unit, vocab, target, exclude, 1);
      if (!top.empty() && top[0].index == id) ++result.correct;
    }
    auto& aggregate = category.syntactic() ? report.syntactic : report.semantic;
    aggregate.seen += result.seen;
    aggregate.correct += result.correct;
    aggregate.oov += result.oov;
    report.total.seen += result.seen;
    report.total.correct += result.correct;
    report.total.oov += result.oov;
    report.categories.push_back(std::move(result));
  }
  return report;
}

void AnalogyReport::write(std::ostream& out) const {
  std::size_t width = 8;
  for (const auto& c : categories) width = std::max(width, c.name.size());
  width = std::max({width, syntactic.name.size(), semantic.name.size(), total.name.size()});

  auto line = [&](const CategoryResult& r) {
    char buf[160];
    double accuracy = r.seen > 0 ? 100.0 * static_cast<double>(r.correct) / static_cast<double>(r.seen) : 0.0;
    std::snprintf(buf, sizeof(buf), "%-*s  %8lld  %8lld  %6.2f%%  (oov %lld)",
                  static_cast<int>(width), r.name.c_str(), static_cast<long long>(r.seen),
                  static_cast<long long>(r.correct), accuracy, static_cast<long long>(r.oov));
    out << buf << '\n';
  };

  char header[160];
  std::snprintf(header, sizeof(header), "%-*s  %8s  %8s  %7s", static_cast<int>(width),
                "category", "seen", "correct", "acc");
  out << header << '\n';
  for (const auto& c : categories) line(c);
  line(syntactic);
  line(semantic);
  line(total);
  out << "TOTAL " << total.correct << ' ' << total.seen << ' ' << total.oov << '\n';
}

}  // namespace skipgram
