#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "subriem/errors.hpp"
#include "subriem/qpoly.hpp"
#include "subriem/rational.hpp"

namespace subriem {

using RationalMatrix = std::vector<std::vector<Rational>>;
using QMatrix = std::vector<std::vector<QPoly>>;

/// Row-echelon rank over Q.
inline std::size_t rank(RationalMatrix m) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c].is_zero()) continue;
      const Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

/// Solves sum_i x_i * rows[i] = target over Q when the rows are independent.
/// Returns std::nullopt if target is not in their span.
inline std::optional<std::vector<Rational>> solve_in_row_span(const RationalMatrix &rows,
                                                              const std::vector<Rational> &target) {
  const std::size_t k = rows.size();
  const std::size_t n = target.size();
  // Augmented system A^T x = target, A^T is n x k.
  RationalMatrix a(n, std::vector<Rational>(k + 1));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < k; ++i) a[j][i] = rows[i][j];
    a[j][k] = target[j];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < k && r < n; ++c) {
    std::size_t p = r;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) continue;
    std::swap(a[p], a[r]);
    const Rational inv = Rational(1) / a[r][c];
    for (std::size_t j = c; j <= k; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j <= k; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < n; ++i)
    if (!a[i][k].is_zero()) return std::nullopt;
  std::vector<Rational> x(k, Rational(0));
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = a[i][k];
  return x;
}

/// Fraction-free (Bareiss) elimination over the quotient ring Q[y]/(|y|^2 - 1).
///
/// The ring is an integral domain, so every Bareiss division is exact; entries
/// stay minors of the input and the number of pivots is the rank over the
/// fraction field. Returns (rank, signed product of pivots' last minor) where
/// the second value is the determinant when the matrix is square and regular.
inline std::pair<std::size_t, QPoly> bareiss(QMatrix m) {
  const std::size_t rows = m.size();
  if (rows == 0) return {0, QPoly()};
  const std::size_t cols = m.front().size();
  const std::size_t dim = m.front().front().dim();
  QPoly prev = QPoly::constant(dim, Rational(1));
  int sign = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // Prefer the sparsest nonzero pivot; it keeps intermediate minors small.
    std::size_t p = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!m[i][c].is_zero() && (p == rows || m[i][c].poly().terms().size() < m[p][c].poly().terms().size())) p = i;
    if (p == rows) continue;
    if (p != r) {
      std::swap(m[p], m[r]);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        QPoly num = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        auto q = divide_exact(num, prev);
        if (!q) throw InexactDivision();
        m[i][j] = std::move(*q);
      }
      m[i][c] = QPoly(dim);
    }
    prev = m[r][c];
    ++r;
  }
  QPoly last = r == rows && rows == cols ? (sign > 0 ? prev : -prev) : QPoly(dim);
  return {r, last};
}

inline std::size_t generic_rank(const QMatrix &m) { return bareiss(m).first; }

inline QPoly determinant(const QMatrix &m) {
  if (m.empty()) throw Error("determinant of empty matrix");
  if (m.size() != m.front().size()) throw Error("determinant of non-square matrix");
  return bareiss(m).second;
}

} // namespace subriem
