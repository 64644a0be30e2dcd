#pragma once

#include <optional>
#include <vector>

#include "fuscalc/rational.hpp"

namespace fuscalc {

using Matrix = std::vector<std::vector<Rational>>;

/// Exact solution of a square system; nullopt when singular.
std::optional<std::vector<Rational>> solve_linear(Matrix A, std::vector<Rational> b);

int matrix_rank(Matrix A);

Rational determinant(Matrix A);

}  // namespace fuscalc
