#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "skipgram/model.hpp"

namespace skipgram {

// Top-2 principal-component coordinates of `rows` (row-major, rows x dim),
// mean-centered first. Component signs are fixed by making the first
// coordinate of each principal direction that exceeds noise level positive.
// A component whose variance vanishes yields exact zero coordinates.
std::vector<std::array<double, 2>> project_2d(std::span<const double> rows,
                                              std::size_t row_count, std::size_t dim);

// Same, for the vectors of the selected tokens (at least 3, all in
// vocabulary); coordinates are emitted in input order.
std::vector<std::array<double, 2>> project_2d(const EmbeddingModel& model,
                                              std::span<const std::string> tokens);

}  // namespace skipgram
