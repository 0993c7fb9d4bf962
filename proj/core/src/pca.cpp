#include "skipgram/pca.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "skipgram/errors.hpp"

namespace skipgram {

namespace {

// Cyclic Jacobi eigendecomposition of a symmetric m x m matrix (row-major,
// destroyed). Eigenvalues land in `values`, matching eigenvectors in the
// columns of `vectors` (vectors[i * m + j] = component i of eigenvector j).
void jacobi_symmetric(std::vector<double>& a, std::size_t m, std::vector<double>& values,
                      std::vector<double>& vectors) {
  vectors.assign(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) vectors[i * m + i] = 1.0;

  double frob = 0.0;
  for (double v : a) frob += v * v;
  const double tol = 1e-28 * (frob > 0 ? frob : 1.0);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = p + 1; q < m; ++q) off += 2.0 * a[p * m + q] * a[p * m + q];
    if (off <= tol) break;

    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        double apq = a[p * m + q];
        if (apq == 0.0) continue;
        double app = a[p * m + p];
        double aqq = a[q * m + q];
        double theta = (aqq - app) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;

        for (std::size_t k = 0; k < m; ++k) {
          double akp = a[k * m + p];
          double akq = a[k * m + q];
          a[k * m + p] = c * akp - s * akq;
          a[k * m + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < m; ++k) {
          double apk = a[p * m + k];
          double aqk = a[q * m + k];
          a[p * m + k] = c * apk - s * aqk;
          a[q * m + k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < m; ++k) {
          double vkp = vectors[k * m + p];
          double vkq = vectors[k * m + q];
          vectors[k * m + p] = c * vkp - s * vkq;
          vectors[k * m + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  values.resize(m);
  for (std::size_t i = 0; i < m; ++i) values[i] = a[i * m + i];
}

// Indices of the two largest eigenvalues.
std::pair<std::size_t, std::size_t> top_two(const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  std::size_t second = best == 0 ? 1 : 0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (i != best && values[i] > values[second]) second = i;
  return {best, second};
}

// Fixes the component sign: the first coordinate clearly above noise level
// must be positive. Returns +1/-1.
double sign_fix(std::span<const double> direction) {
  double max_abs = 0.0;
  for (double v : direction) max_abs = std::max(max_abs, std::abs(v));
  if (max_abs == 0.0) return 1.0;
  for (double v : direction)
    if (std::abs(v) > 1e-12 * max_abs) return v > 0 ? 1.0 : -1.0;
  return 1.0;
}

}  // namespace

std::vector<std::array<double, 2>> project_2d(std::span<const double> rows,
                                              std::size_t row_count, std::size_t dim) {
  if (row_count < 3) throw ConfigError("projection needs at least 3 points");
  if (rows.size() != row_count * dim) throw ConfigError("projection data size mismatch");

  std::vector<double> centered(rows.begin(), rows.end());
  std::vector<double> mean(dim, 0.0);
  for (std::size_t i = 0; i < row_count; ++i)
    for (std::size_t k = 0; k < dim; ++k) mean[k] += centered[i * dim + k];
  for (std::size_t k = 0; k < dim; ++k) mean[k] /= static_cast<double>(row_count);
  for (std::size_t i = 0; i < row_count; ++i)
    for (std::size_t k = 0; k < dim; ++k) centered[i * dim + k] -= mean[k];

  std::vector<std::array<double, 2>> coords(row_count, {0.0, 0.0});

  if (dim <= row_count) {
    // Covariance route: eigenvectors of X^T X are the principal directions.
    std::vector<double> cov(dim * dim, 0.0);
    for (std::size_t i = 0; i < row_count; ++i)
      for (std::size_t p = 0; p < dim; ++p) {
        double xp = centered[i * dim + p];
        if (xp == 0.0) continue;
        for (std::size_t q = 0; q < dim; ++q) cov[p * dim + q] += xp * centered[i * dim + q];
      }
    std::vector<double> values, vectors;
    jacobi_symmetric(cov, dim, values, vectors);
    auto [first, second] = top_two(values);
    double lead = std::max(values[first], 0.0);

    std::size_t components[2] = {first, second};
    for (int j = 0; j < 2; ++j) {
      if (values[components[j]] <= 1e-12 * lead || lead == 0.0) continue;
      std::vector<double> direction(dim);
      for (std::size_t k = 0; k < dim; ++k) direction[k] = vectors[k * dim + components[j]];
      double sign = sign_fix(direction);
      for (std::size_t i = 0; i < row_count; ++i) {
        double proj = 0.0;
        for (std::size_t k = 0; k < dim; ++k) proj += centered[i * dim + k] * direction[k];
        coords[i][j] = sign * proj;
      }
    }
  } else {
    // Gram route for wide data: eigenvectors u of X X^T give coordinates
    // sqrt(lambda) * u and directions X^T u / sqrt(lambda).
    std::vector<double> gram(row_count * row_count, 0.0);
    for (std::size_t i = 0; i < row_count; ++i)
      for (std::size_t j = i; j < row_count; ++j) {
        double dot = 0.0;
        for (std::size_t k = 0; k < dim; ++k)
          dot += centered[i * dim + k] * centered[j * dim + k];
        gram[i * row_count + j] = dot;
        gram[j * row_count + i] = dot;
      }
    std::vector<double> values, vectors;
    jacobi_symmetric(gram, row_count, values, vectors);
    auto [first, second] = top_two(values);
    double lead = std::max(values[first], 0.0);

    std::size_t components[2] = {first, second};
    for (int j = 0; j < 2; ++j) {
      double lambda = values[components[j]];
      if (lambda <= 1e-12 * lead || lead == 0.0) continue;
      double scale = std::sqrt(lambda);
      std::vector<double> direction(dim, 0.0);
      for (std::size_t i = 0; i < row_count; ++i) {
        double u = vectors[i * row_count + components[j]];
        for (std::size_t k = 0; k < dim; ++k) direction[k] += centered[i * dim + k] * u;
      }
      for (double& v : direction) v /= scale;
      double sign = sign_fix(direction);
      for (std::size_t i = 0; i < row_count; ++i)
        coords[i][j] = sign * scale * vectors[i * row_count + components[j]];
    }
  }
  return coords;
}

std::vector<std::array<double, 2>> project_2d(const EmbeddingModel& model,
                                              std::span<const std::string> tokens) {
  if (tokens.size() < 3) throw ConfigError("projection needs at least 3 tokens");
  const auto dim = static_cast<std::size_t>(model.dim());
  std::vector<double> rows;
  rows.reserve(tokens.size() * dim);
  for (const auto& token : tokens) {
    std::int32_t w = model.vocab().find(token);
    if (w == Vocabulary::kNotFound) throw OovError(token);
    auto src = model.input_row(w);
    for (float v : src) rows.push_back(v);
  }
  return project_2d(rows, tokens.size(), dim);
}

}  // namespace skipgram
