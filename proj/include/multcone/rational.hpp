// Exact rational scalars, vectors and dense linear algebra used throughout.
// All cone geometry and Schubert calculus in this library is done over
// arbitrary-precision rationals (GMP); no floating point anywhere.
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace multcone {

using Rat = mpq_class;
using BigInt = mpz_class;

using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;

inline QVec qvec(std::size_t n) { return QVec(n, Rat(0)); }

inline QMat qmat(std::size_t rows, std::size_t cols) {
  return QMat(rows, qvec(cols));
}

inline Rat dot(const QVec& a, const QVec& b) {
  assert(a.size() == b.size());
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline QVec& add_scaled(QVec& a, const Rat& c, const QVec& b) {
  assert(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += c * b[i];
  return a;
}

inline QVec scaled(const QVec& a, const Rat& c) {
  QVec r = a;
  for (auto& x : r) x *= c;
  return r;
}

inline QVec vsum(const QVec& a, const QVec& b) {
  QVec r = a;
  add_scaled(r, Rat(1), b);
  return r;
}

inline QVec vdiff(const QVec& a, const QVec& b) {
  QVec r = a;
  add_scaled(r, Rat(-1), b);
  return r;
}

inline bool is_zero(const QVec& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

inline QVec mat_apply(const QMat& m, const QVec& v) {
  QVec r = qvec(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], v);
  return r;
}

inline QMat mat_mul(const QMat& a, const QMat& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  QMat r = qmat(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (a[i][j] != 0)
        for (std::size_t l = 0; l < m; ++l) r[i][l] += a[i][j] * b[j][l];
  return r;
}

inline QMat mat_transpose(const QMat& a) {
  if (a.empty()) return {};
  QMat r = qmat(a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) r[j][i] = a[i][j];
  return r;
}

inline QMat identity_mat(std::size_t n) {
  QMat r = qmat(n, n);
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  return r;
}

// Row-reduce in place; returns rank. Columns [0, cols) participate in pivot
// selection, trailing columns (if any) are carried along (augmented systems).
inline std::size_t row_reduce(QMat& m, std::size_t cols) {
  std::size_t rank = 0;
  const std::size_t rows = m.size();
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[rank], m[piv]);
    const Rat inv = 1 / m[rank][col];
    for (auto& x : m[rank]) x *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][col] == 0) continue;
      const Rat f = m[r][col];
      for (std::size_t c = col; c < m[r].size(); ++c) m[r][c] -= f * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

inline std::size_t rank_of(QMat m) {
  if (m.empty()) return 0;
  return row_reduce(m, m[0].size());
}

inline Rat determinant(QMat m) {
  const std::size_t n = m.size();
  Rat det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return Rat(0);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    const Rat inv = 1 / m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rat f = m[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

// Solve m x = rhs (m square nonsingular).
inline QVec solve_linear(QMat m, QVec rhs) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) m[i].push_back(rhs[i]);
  const std::size_t rank = row_reduce(m, n);
  assert(rank == n && "singular system");
  QVec x = qvec(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t lead = 0;
    while (lead < n && m[i][lead] == 0) ++lead;
    if (lead < n) x[lead] = m[i][n];
  }
  return x;
}

inline QMat mat_inverse(const QMat& a) {
  const std::size_t n = a.size();
  QMat m = a;
  for (std::size_t i = 0; i < n; ++i) {
    const QMat id = identity_mat(n);
    m[i].insert(m[i].end(), id[i].begin(), id[i].end());
  }
  const std::size_t rank = row_reduce(m, n);
  assert(rank == n && "matrix not invertible");
  // rows are now sorted by pivot column since the matrix is invertible
  QMat inv = qmat(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
  return inv;
}

// Basis of the right kernel of m (vectors x with m x = 0).
inline QMat kernel_basis(QMat m, std::size_t cols) {
  const std::size_t rank = row_reduce(m, cols);
  std::vector<std::size_t> lead_col(rank);
  std::vector<bool> is_lead(cols, false);
  for (std::size_t i = 0; i < rank; ++i) {
    std::size_t lead = 0;
    while (lead < cols && m[i][lead] == 0) ++lead;
    lead_col[i] = lead;
    is_lead[lead] = true;
  }
  QMat basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_lead[free]) continue;
    QVec v = qvec(cols);
    v[free] = 1;
    for (std::size_t i = 0; i < rank; ++i) v[lead_col[i]] = -m[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Scale a rational vector to a primitive integer vector (gcd 1), preserving
// direction. Zero vector maps to itself.
inline QVec primitive(const QVec& v) {
  BigInt l = 1;
  for (const auto& x : v) {
    BigInt den = x.get_den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
  }
  BigInt g = 0;
  std::vector<BigInt> nums(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rat scaled = v[i] * Rat(l);
    nums[i] = scaled.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), nums[i].get_mpz_t());
  }
  if (g == 0) return qvec(v.size());
  QVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(nums[i] / g);
  return r;
}

inline int sign_of(const Rat& x) { return sgn(x); }

inline std::string rat_to_string(const Rat& x) { return x.get_str(); }

inline bool lex_less(const QVec& a, const QVec& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    const int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return a.size() < b.size();
}

}  // namespace multcone
