#include <algorithm>
#include <cmath>
#include <vector>

#include "skipgram/trainer.hpp"

namespace skipgram {

template <typename T>
T sigmoid(T x) {
  if (x >= T(0)) {
    return T(1) / (T(1) + std::exp(-x));
  }
  T e = std::exp(x);
  return e / (T(1) + e);
}

template float sigmoid<float>(float);
template double sigmoid<double>(double);

namespace {

template <typename T>
double dot(std::span<const T> a, std::span<const T> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<double>(a[i]) * b[i];
  return s;
}

}  // namespace

template <typename T>
double full_softmax_prob(const EmbeddingModelT<T>& model, std::int32_t w_o, std::int32_t w_i) {
  const auto w = model.vocab_size();
  auto in = model.input_row(w_i);
  std::vector<double> scores(w);
  double max_score = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < w; ++k) {
    scores[k] = dot(model.output_row(static_cast<std::int32_t>(k)), in);
    max_score = std::max(max_score, scores[k]);
  }
  double z = 0.0;
  for (double s : scores) z += std::exp(s - max_score);
  return std::exp(scores[w_o] - max_score) / z;
}

template <typename T>
double hs_prob(const EmbeddingModelT<T>& model, const HuffmanCoding& coding, std::int32_t w,
               std::int32_t w_i) {
  auto in = model.input_row(w_i);
  const auto& code = coding.codes[w];
  const auto& points = coding.points[w];
  double p = 1.0;
  for (std::size_t j = 0; j < code.size(); ++j) {
    double score = dot(model.output_row(points[j]), in);
    p *= sigmoid(code[j] == 0 ? score : -score);
  }
  return p;
}

template <typename T>
double neg_objective(const EmbeddingModelT<T>& model, std::int32_t w_o, std::int32_t w_i,
                     std::span<const std::int32_t> negatives) {
  auto in = model.input_row(w_i);
  // log sigma(x) = -log(1 + exp(-x)), computed via log1p for accuracy.
  auto log_sigmoid = [](double x) {
    return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
  };
  double obj = log_sigmoid(dot(model.output_row(w_o), in));
  for (std::int32_t neg : negatives) obj += log_sigmoid(-dot(model.output_row(neg), in));
  return obj;
}

template <typename T>
void neg_step(EmbeddingModelT<T>& model, std::int32_t w_o, std::int32_t w_i,
              std::span<const std::int32_t> negatives, T lr) {
  const std::size_t d = static_cast<std::size_t>(model.dim());
  auto in = model.input_row(w_i);

  // The input-row update is buffered so every output row is combined with the
  // pre-update input vector.
  thread_local std::vector<T> input_delta;
  input_delta.assign(d, T(0));

  auto update_one = [&](std::int32_t row_index, T target) {
    auto row = model.output_row(row_index);
    T score = T(0);
    for (std::size_t k = 0; k < d; ++k) score += row[k] * in[k];
    T g = (target - sigmoid(score)) * lr;
    for (std::size_t k = 0; k < d; ++k) {
      input_delta[k] += g * row[k];
      row[k] += g * in[k];
    }
  };

  update_one(w_o, T(1));
  for (std::int32_t neg : negatives) update_one(neg, T(0));
  for (std::size_t k = 0; k < d; ++k) in[k] += input_delta[k];
}

template <typename T>
void hs_step(EmbeddingModelT<T>& model, const HuffmanCoding& coding, std::int32_t w_o,
             std::int32_t w_i, T lr) {
  const std::size_t d = static_cast<std::size_t>(model.dim());
  auto in = model.input_row(w_i);
  const auto& code = coding.codes[w_o];
  const auto& points = coding.points[w_o];

  thread_local std::vector<T> input_delta;
  input_delta.assign(d, T(0));

  for (std::size_t j = 0; j < code.size(); ++j) {
    auto row = model.output_row(points[j]);
    T score = T(0);
    for (std::size_t k = 0; k < d; ++k) score += row[k] * in[k];
    T target = code[j] == 0 ? T(1) : T(0);
    T g = (target - sigmoid(score)) * lr;
    for (std::size_t k = 0; k < d; ++k) {
      input_delta[k] += g * row[k];
      row[k] += g * in[k];
    }
  }
  for (std::size_t k = 0; k < d; ++k) in[k] += input_delta[k];
}

template double full_softmax_prob<float>(const EmbeddingModelT<float>&, std::int32_t, std::int32_t);
template double full_softmax_prob<double>(const EmbeddingModelT<double>&, std::int32_t, std::int32_t);
template double hs_prob<float>(const EmbeddingModelT<float>&, const HuffmanCoding&, std::int32_t, std::int32_t);
template double hs_prob<double>(const EmbeddingModelT<double>&, const HuffmanCoding&, std::int32_t, std::int32_t);
template double neg_objective<float>(const EmbeddingModelT<float>&, std::int32_t, std::int32_t, std::span<const std::int32_t>);
template double neg_objective<double>(const EmbeddingModelT<double>&, std::int32_t, std::int32_t, std::span<const std::int32_t>);
template void neg_step<float>(EmbeddingModelT<float>&, std::int32_t, std::int32_t, std::span<const std::int32_t>, float);
template void neg_step<double>(EmbeddingModelT<double>&, std::int32_t, std::int32_t, std::span<const std::int32_t>, double);
template void hs_step<float>(EmbeddingModelT<float>&, const HuffmanCoding&, std::int32_t, std::int32_t, float);
template void hs_step<double>(EmbeddingModelT<double>&, const HuffmanCoding&, std::int32_t, std::int32_t, double);

}  // namespace skipgram
