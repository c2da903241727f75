#pragma once

#include "wittkit/scalar.hpp"

#include <vector>

namespace wittkit {

// Row-major dense matrix of exact rationals.
using Matrix = std::vector<std::vector<Scalar>>;

/// Basis of {v : M v = 0}. Rows are cleared to integers and reduced with
/// fraction-free (Bareiss) elimination; the basis comes from back substitution
/// with one free column set to 1 per vector. `cols` is needed when M has no rows.
std::vector<std::vector<Scalar>> null_space(const Matrix& m, std::size_t cols);

std::size_t rank(const Matrix& m);

std::vector<Scalar> mat_vec(const Matrix& m, const std::vector<Scalar>& v);

}  // namespace wittkit
