#pragma once

#include <cstddef>
#include <vector>

#include "vex/core/vector.hpp"

namespace vex {

using Matrix = std::vector<Vec>;

/// Row-reduces in place; returns the pivot columns.
std::vector<std::size_t> rref(Matrix& m, std::size_t cols);

std::size_t rank(Matrix m, std::size_t cols);

/// Basis of {x : r·x = 0 for every row r}, each vector made primitive.
Matrix null_space(const Matrix& rows, std::size_t cols);

}  // namespace vex
