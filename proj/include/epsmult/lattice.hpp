#ifndef EPSMULT_LATTICE_HPP
#define EPSMULT_LATTICE_HPP

#include "error.hpp"
#include "rational.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace epsmult {

using IntRow = std::vector<BigInt>;
using IntMatrix = std::vector<IntRow>;

namespace detail {

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    q -= 1;
  return q;
}

inline std::size_t column_count(const IntMatrix& m) {
  return m.empty() ? 0 : m.front().size();
}

inline void check_rectangular(const IntMatrix& m) {
  auto c = column_count(m);
  for (const auto& r : m)
    if (r.size() != c)
      throw DimensionMismatch("ragged integer matrix");
}

} // namespace detail

/// Row-style Hermite normal form: the nonzero rows of the result are a basis
/// of the row lattice, in echelon form with positive pivots and reduced
/// entries above each pivot.
inline IntMatrix hermite_basis(IntMatrix rows) {
  detail::check_rectangular(rows);
  const auto cols = detail::column_count(rows);
  std::size_t pivot_row = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  for (std::size_t c = 0; c < cols && pivot_row < rows.size(); ++c) {
    while (true) {
      // Row with the smallest nonzero entry in column c.
      std::size_t best = rows.size();
      for (std::size_t r = pivot_row; r < rows.size(); ++r)
        if (rows[r][c] != 0 &&
            (best == rows.size() || abs(rows[r][c]) < abs(rows[best][c])))
          best = r;
      if (best == rows.size())
        break;
      std::swap(rows[pivot_row], rows[best]);
      bool clean = true;
      for (std::size_t r = pivot_row + 1; r < rows.size(); ++r) {
        if (rows[r][c] == 0)
          continue;
        BigInt q = detail::floor_div(rows[r][c], rows[pivot_row][c]);
        for (std::size_t k = c; k < cols; ++k)
          rows[r][k] -= q * rows[pivot_row][k];
        if (rows[r][c] != 0)
          clean = false;
      }
      if (clean) {
        if (rows[pivot_row][c] < 0)
          for (auto& x : rows[pivot_row])
            x = -x;
        pivots.emplace_back(pivot_row, c);
        ++pivot_row;
        break;
      }
    }
  }
  rows.resize(pivot_row);
  for (auto [pr, pc] : pivots)
    for (std::size_t r = 0; r < pr; ++r) {
      BigInt q = detail::floor_div(rows[r][pc], rows[pr][pc]);
      if (q != 0)
        for (std::size_t k = 0; k < cols; ++k)
          rows[r][k] -= q * rows[pr][k];
    }
  return rows;
}

inline std::size_t lattice_rank(const IntMatrix& rows) {
  return hermite_basis(rows).size();
}

/// Diagonalisation P·A·Q = diag(d_1..d_r, 0...) with unimodular column
/// transform Q tracked together with its inverse.
struct SmithForm {
  std::vector<BigInt> diagonal; // nonzero entries, positive
  IntMatrix column_transform;   // Q
  IntMatrix column_inverse;     // Q^{-1}
  std::size_t rank() const { return diagonal.size(); }

  /// Product of the diagonal: index of the row lattice in its saturation.
  BigInt index() const {
    BigInt p = 1;
    for (const auto& d : diagonal)
      p *= d;
    return p;
  }

  /// Basis of (row lattice ⊗ Q) ∩ Z^n: the first rank() rows of Q^{-1}.
  IntMatrix saturation_basis() const {
    return IntMatrix(column_inverse.begin(), column_inverse.begin() + rank());
  }

  /// Coordinates of `w` (in the span) with respect to saturation_basis().
  std::vector<Rational> coordinates(const std::vector<Rational>& w) const {
    const auto n = column_transform.size();
    if (w.size() != n)
      throw DimensionMismatch("coordinate vector length mismatch");
    std::vector<Rational> all(n, Rational(0));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        if (w[i] != 0 && column_transform[i][j] != 0)
          all[j] += w[i] * Rational(column_transform[i][j]);
    for (std::size_t j = rank(); j < n; ++j)
      if (all[j] != 0)
        throw PreconditionError("vector is not in the span of the lattice");
    all.resize(rank());
    return all;
  }
};

namespace detail {
inline SmithForm finish(SmithForm& out, const IntMatrix& a, std::size_t rank) {
  out.diagonal.clear();
  for (std::size_t i = 0; i < rank; ++i)
    out.diagonal.push_back(abs(a[i][i]));
  return std::move(out);
}
} // namespace detail

inline SmithForm smith_normal_form(IntMatrix a) {
  detail::check_rectangular(a);
  const auto rows = a.size();
  const auto cols = detail::column_count(a);
  SmithForm out;
  out.column_transform.assign(cols, IntRow(cols, BigInt(0)));
  out.column_inverse.assign(cols, IntRow(cols, BigInt(0)));
  for (std::size_t i = 0; i < cols; ++i)
    out.column_transform[i][i] = out.column_inverse[i][i] = 1;

  auto& Q = out.column_transform;
  auto& Qi = out.column_inverse;
  auto swap_cols = [&](std::size_t j, std::size_t k) {
    if (j == k)
      return;
    for (auto& r : a)
      std::swap(r[j], r[k]);
    for (auto& r : Q)
      std::swap(r[j], r[k]);
    std::swap(Qi[j], Qi[k]);
  };
  // col k += t * col j
  auto add_col = [&](std::size_t j, std::size_t k, const BigInt& t) {
    for (auto& r : a)
      r[k] += t * r[j];
    for (auto& r : Q)
      r[k] += t * r[j];
    for (std::size_t c = 0; c < cols; ++c)
      Qi[j][c] -= t * Qi[k][c];
  };

  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    while (true) {
      std::size_t br = rows, bc = cols;
      for (std::size_t r = t; r < rows; ++r)
        for (std::size_t c = t; c < cols; ++c)
          if (a[r][c] != 0 && (br == rows || abs(a[r][c]) < abs(a[br][bc]))) {
            br = r;
            bc = c;
          }
      if (br == rows)
        return detail::finish(out, a, t);
      std::swap(a[t], a[br]);
      swap_cols(t, bc);
      bool clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (a[r][t] == 0)
          continue;
        BigInt q = detail::floor_div(a[r][t], a[t][t]);
        for (std::size_t c = t; c < cols; ++c)
          a[r][c] -= q * a[t][c];
        if (a[r][t] != 0)
          clean = false;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (a[t][c] == 0)
          continue;
        BigInt q = detail::floor_div(a[t][c], a[t][t]);
        add_col(t, c, -q);
        if (a[t][c] != 0)
          clean = false;
      }
      if (clean)
        break;
    }
  }
  return detail::finish(out, a, t);
}

/// Exact rank over Q of a rational matrix.
inline std::size_t rational_rank(std::vector<std::vector<Rational>> m) {
  std::size_t rank = 0;
  const auto cols = m.empty() ? 0 : m.front().size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0)
      ++p;
    if (p == m.size())
      continue;
    std::swap(m[rank], m[p]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c] == 0)
        continue;
      Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k)
        m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

} // namespace epsmult

#endif
