// Exact rational polyhedral cones: double description (inequalities <-> rays),
// membership classification, facet irredundancy, and nonnegative
// decomposition by a small exact simplex.
#pragma once

#include <cstdint>

#include "multcone/rational.hpp"

namespace multcone {

struct RationalCone {
  int ambient_dim = 0;
  QMat inequalities;        // rows a with a . x >= 0, primitive integer
  std::optional<QMat> rays; // primitive integer generators, lex-sorted
};

namespace dd {

using Bits = std::vector<std::uint64_t>;

inline Bits bits_make(std::size_t n) { return Bits((n + 63) / 64, 0); }
inline void bits_set(Bits& b, std::size_t i) { b[i / 64] |= (std::uint64_t{1} << (i % 64)); }
inline bool bits_subset(const Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}
inline Bits bits_and(const Bits& a, const Bits& b) {
  Bits r = a;
  for (std::size_t i = 0; i < a.size(); ++i) r[i] &= b[i];
  return r;
}
inline int bits_count(const Bits& a) {
  int c = 0;
  for (auto w : a) c += __builtin_popcountll(w);
  return c;
}

struct Ray {
  QVec v;      // primitive integer coordinates
  Bits tight;  // over all inequality indices, bits set as rows are processed
};

}  // namespace dd

// Enumerate the extremal rays of the pointed cone {x : A x >= 0}.
// Throws if the cone is not pointed (rank A < dim).
inline QMat double_description(const QMat& ineqs, int dim) {
  QMat A;
  for (const auto& row : ineqs) A.push_back(primitive(row));
  const std::size_t m = A.size();

  // initial simplicial subcone from dim independent rows
  std::vector<std::size_t> base;
  {
    QMat probe;
    for (std::size_t i = 0; i < m && base.size() < static_cast<std::size_t>(dim); ++i) {
      probe.push_back(A[i]);
      if (rank_of(probe) == probe.size())
        base.push_back(i);
      else
        probe.pop_back();
    }
    if (base.size() < static_cast<std::size_t>(dim))
      throw std::invalid_argument("double_description: cone is not pointed");
  }

  QMat B;
  for (std::size_t i : base) B.push_back(A[i]);
  QMat Binv = mat_inverse(B);

  std::vector<dd::Ray> rays;
  for (int j = 0; j < dim; ++j) {
    QVec col = qvec(dim);
    for (int r = 0; r < dim; ++r) col[r] = Binv[r][j];
    dd::Ray ray;
    ray.v = primitive(col);
    ray.tight = dd::bits_make(m);
    rays.push_back(std::move(ray));
  }
  std::vector<bool> processed(m, false);
  auto mark_tight = [&](std::size_t row) {
    for (auto& r : rays) {
      if (dot(A[row], r.v) == 0) dd::bits_set(r.tight, row);
    }
  };
  for (std::size_t i : base) {
    processed[i] = true;
    mark_tight(i);
  }

  for (std::size_t i = 0; i < m; ++i) {
    if (processed[i]) continue;
    std::vector<int> sgn(rays.size());
    bool any_neg = false;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      sgn[k] = sign_of(dot(A[i], rays[k].v));
      if (sgn[k] < 0) any_neg = true;
    }
    if (!any_neg) {
      processed[i] = true;
      mark_tight(i);
      continue;
    }
    std::vector<dd::Ray> next;
    for (std::size_t k = 0; k < rays.size(); ++k)
      if (sgn[k] >= 0) next.push_back(rays[k]);
    // combine adjacent (+,-) pairs
    const int need = dim - 2;
    for (std::size_t p = 0; p < rays.size(); ++p) {
      if (sgn[p] <= 0) continue;
      for (std::size_t q = 0; q < rays.size(); ++q) {
        if (sgn[q] >= 0) continue;
        dd::Bits common = dd::bits_and(rays[p].tight, rays[q].tight);
        if (dd::bits_count(common) < need) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size(); ++r) {
          if (r == p || r == q || sgn[r] == 9) continue;
          if (dd::bits_subset(common, rays[r].tight)) {
            adjacent = false;
            break;
          }
        }
        if (!adjacent) continue;
        const Rat ap = dot(A[i], rays[p].v);
        const Rat aq = dot(A[i], rays[q].v);
        QVec nv = scaled(rays[q].v, ap);
        add_scaled(nv, -aq, rays[p].v);
        dd::Ray nr;
        nr.v = primitive(nv);
        nr.tight = common;  // rows tight for both stay tight; refresh below
        next.push_back(std::move(nr));
      }
    }
    rays = std::move(next);
    processed[i] = true;
    // refresh tight sets against all processed rows for exactness
    for (auto& r : rays) {
      r.tight = dd::bits_make(m);
      for (std::size_t row = 0; row <= i; ++row)
        if (processed[row] && dot(A[row], r.v) == 0) dd::bits_set(r.tight, row);
    }
  }

  std::set<QVec> dedup;
  for (auto& r : rays) dedup.insert(r.v);
  QMat out(dedup.begin(), dedup.end());
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

enum class Membership { Outside, Boundary, Interior };

struct MembershipResult {
  Membership where;
  std::vector<std::size_t> tight;
  std::vector<std::size_t> violated;
  bool in_cone() const { return where != Membership::Outside; }
};

inline MembershipResult cone_membership(const RationalCone& cone, const QVec& x) {
  MembershipResult res;
  for (std::size_t i = 0; i < cone.inequalities.size(); ++i) {
    const Rat v = dot(cone.inequalities[i], x);
    if (v == 0) res.tight.push_back(i);
    if (v < 0) res.violated.push_back(i);
  }
  if (!res.violated.empty())
    res.where = Membership::Outside;
  else if (!res.tight.empty())
    res.where = Membership::Boundary;
  else
    res.where = Membership::Interior;
  return res;
}

// x spans an extremal ray iff it is in the cone and its tight inequalities
// have rank dim-1
inline bool is_extremal_ray(const RationalCone& cone, const QVec& x) {
  auto mem = cone_membership(cone, x);
  if (!mem.in_cone()) return false;
  QMat tight_rows;
  for (auto i : mem.tight) tight_rows.push_back(cone.inequalities[i]);
  return rank_of(tight_rows) == static_cast<std::size_t>(cone.ambient_dim) - 1;
}

// inequality i defines a facet iff its tight rays span a hyperplane
inline bool is_facet_defining(const RationalCone& cone, std::size_t i) {
  assert(cone.rays.has_value());
  QMat tight;
  for (const QVec& r : *cone.rays)
    if (dot(cone.inequalities[i], r) == 0) tight.push_back(r);
  return rank_of(tight) == static_cast<std::size_t>(cone.ambient_dim) - 1;
}

// Nonnegative rational solution x of G^T x = target over the generator list,
// by phase-I simplex with Bland's rule. Returns coefficients or nullopt.
inline std::optional<QVec> nonneg_decomposition(const QMat& generators, const QVec& target) {
  const std::size_t mrows = target.size();
  const std::size_t nvars = generators.size();
  // tableau: [A | I] x = b with artificial basis, minimize sum of artificials
  QMat T = qmat(mrows, nvars + mrows + 1);
  for (std::size_t r = 0; r < mrows; ++r) {
    for (std::size_t c = 0; c < nvars; ++c) T[r][c] = generators[c][r];
    T[r][nvars + mrows] = target[r];
  }
  for (std::size_t r = 0; r < mrows; ++r) {
    if (T[r][nvars + mrows] < 0)
      for (auto& x : T[r]) x = -x;
    T[r][nvars + r] = 1;
  }
  std::vector<std::size_t> basis(mrows);
  for (std::size_t r = 0; r < mrows; ++r) basis[r] = nvars + r;
  // objective row: sum of artificial rows
  QVec obj = qvec(nvars + mrows + 1);
  for (std::size_t r = 0; r < mrows; ++r)
    for (std::size_t c = 0; c <= nvars + mrows; ++c) obj[c] += T[r][c];
  for (std::size_t r = 0; r < mrows; ++r) obj[nvars + r] = 0;

  auto pivot = [&](std::size_t pr, std::size_t pc) {
    const Rat inv = 1 / T[pr][pc];
    for (auto& x : T[pr]) x *= inv;
    for (std::size_t r = 0; r < mrows; ++r) {
      if (r == pr || T[r][pc] == 0) continue;
      const Rat f = T[r][pc];
      for (std::size_t c = 0; c <= nvars + mrows; ++c) T[r][c] -= f * T[pr][c];
    }
    if (obj[pc] != 0) {
      const Rat f = obj[pc];
      for (std::size_t c = 0; c <= nvars + mrows; ++c) obj[c] -= f * T[pr][c];
    }
    basis[pr] = pc;
  };

  for (int guard = 0; guard < 100000; ++guard) {
    // Bland: smallest improving column
    std::size_t pc = nvars + mrows;
    for (std::size_t c = 0; c < nvars + mrows; ++c)
      if (obj[c] > 0) {
        pc = c;
        break;
      }
    if (pc == nvars + mrows) break;
    std::size_t pr = mrows;
    for (std::size_t r = 0; r < mrows; ++r) {
      if (T[r][pc] <= 0) continue;
      if (pr == mrows) {
        pr = r;
        continue;
      }
      const Rat cur = T[r][nvars + mrows] / T[r][pc];
      const Rat best = T[pr][nvars + mrows] / T[pr][pc];
      if (cur < best || (cur == best && basis[r] < basis[pr])) pr = r;
    }
    if (pr == mrows) break;  // unbounded; cannot happen in phase I
    pivot(pr, pc);
  }
  if (obj[nvars + mrows] != 0) return std::nullopt;
  QVec x = qvec(nvars);
  for (std::size_t r = 0; r < mrows; ++r)
    if (basis[r] < nvars) x[basis[r]] = T[r][nvars + mrows];
  // artificials may linger in basis at value zero; that is fine
  for (std::size_t r = 0; r < mrows; ++r)
    if (basis[r] >= nvars && T[r][nvars + mrows] != 0) return std::nullopt;
  return x;
}

}  // namespace multcone
