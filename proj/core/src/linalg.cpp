#include "fuscalc/linalg.hpp"

namespace fuscalc {

std::optional<std::vector<Rational>> solve_linear(Matrix A, std::vector<Rational> b) {
  const int n = static_cast<int>(A.size());
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (A[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return std::nullopt;
    std::swap(A[col], A[pivot]);
    std::swap(b[col], b[pivot]);
    Rational inv = 1 / A[col][col];
    for (int c = col; c < n; ++c) A[col][c] *= inv;
    b[col] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col || A[r][col] == 0) continue;
      Rational factor = A[r][col];
      for (int c = col; c < n; ++c) A[r][c] -= factor * A[col][c];
      b[r] -= factor * b[col];
    }
  }
  return b;
}

int matrix_rank(Matrix A) {
  if (A.empty()) return 0;
  const int rows = static_cast<int>(A.size());
  const int cols = static_cast<int>(A[0].size());
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (A[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(A[rank], A[pivot]);
    Rational inv = 1 / A[rank][col];
    for (int c = col; c < cols; ++c) A[rank][c] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || A[r][col] == 0) continue;
      Rational factor = A[r][col];
      for (int c = col; c < cols; ++c) A[r][c] -= factor * A[rank][c];
    }
    ++rank;
  }
  return rank;
}

Rational determinant(Matrix A) {
  const int n = static_cast<int>(A.size());
  Rational det = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (A[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != col) {
      std::swap(A[col], A[pivot]);
      det = -det;
    }
    det *= A[col][col];
    Rational inv = 1 / A[col][col];
    for (int r = col + 1; r < n; ++r) {
      if (A[r][col] == 0) continue;
      Rational factor = A[r][col] * inv;
      for (int c = col; c < n; ++c) A[r][c] -= factor * A[col][c];
    }
  }
  return det;
}

}  // namespace fuscalc
