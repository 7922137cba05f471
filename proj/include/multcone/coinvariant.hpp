// Classical Schubert calculus through the Borel coinvariant ring.
//
// Schubert classes of codimension l(w) are represented by the BGG polynomials
// S_w = d_{w^{-1} w_0}( prod_{beta>0} beta / |W| ) in Sym(h*). Polynomials are
// written in the simple-root basis (variable z_i is the root alpha_i), so the
// reflection s_i is the substitution z_j -> z_j - a_{ij} z_i and the divided
// difference d_i is that substitution followed by an exact division by z_i.
// Intersection numbers on G/B are d_{w_0} of products; G/P numbers are
// obtained by pulling back along G/B -> G/P and integrating against the class
// of X_{w_0 w_0^P}.
#pragma once

#include <unordered_map>

#include "multcone/weyl.hpp"

namespace multcone {

using Poly = std::map<std::vector<int>, Rat>;  // exponent vector -> coeff

inline Poly poly_const(int rank, const Rat& c) {
  Poly p;
  if (c != 0) p[std::vector<int>(rank, 0)] = c;
  return p;
}

inline Poly poly_linear(const QVec& coeffs) {
  Poly p;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    std::vector<int> e(coeffs.size(), 0);
    e[i] = 1;
    p[e] = coeffs[i];
  }
  return p;
}

inline void poly_add_term(Poly& p, const std::vector<int>& e, const Rat& c) {
  if (c == 0) return;
  auto it = p.find(e);
  if (it == p.end()) {
    p.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<int> e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      poly_add_term(r, e, ca * cb);
    }
  return r;
}

inline int poly_degree(const Poly& p) {
  int d = -1;
  for (const auto& [e, c] : p) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

inline int64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  int64_t r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

class CoinvariantRing {
 public:
  explicit CoinvariantRing(const Weyl& wy) : wy_(&wy), rs_(&wy.rs()) {
    w0_ = wy.longest_element();
    const int n = rs_->rank;
    Poly top = poly_const(n, Rat(1));
    for (const Root& beta : rs_->positive_roots) {
      QVec coords(beta.begin(), beta.end());
      top = poly_mul(top, poly_linear(coords));
    }
    Rat order = weyl_order(rs_->type_label, n);
    for (auto& [e, c] : top) c /= order;
    top_class_ = std::move(top);
    assert(integral(top_class_) == 1);
  }

  static Rat weyl_order(char type, int rank) {
    auto fact = [](int n) {
      Rat r = 1;
      for (int i = 2; i <= n; ++i) r *= i;
      return r;
    };
    switch (type) {
      case 'A': return fact(rank + 1);
      case 'B':
      case 'C': {
        Rat r = fact(rank);
        for (int i = 0; i < rank; ++i) r *= 2;
        return r;
      }
      case 'D': {
        Rat r = fact(rank);
        for (int i = 0; i < rank - 1; ++i) r *= 2;
        return r;
      }
      case 'E':
        if (rank == 6) return 51840;
        if (rank == 7) return 2903040;
        return Rat("696729600");
      case 'F': return 1152;
      case 'G': return 12;
      default: throw std::invalid_argument("weyl_order: bad type");
    }
  }

  // apply s_i: the basis vector z_b = alpha_b maps to alpha_b - a_{ib} alpha_i
  Poly reflect(int i, const Poly& f) const {
    const int n = rs_->rank;
    Poly out;
    for (const auto& [e, c] : f) {
      Poly term = poly_const(n, c);
      for (int b = 0; b < n; ++b) {
        if (e[b] == 0) continue;
        if (b == i) {
          // z_i -> -z_i
          std::vector<int> mono(n, 0);
          mono[i] = e[b];
          Rat s = (e[b] % 2 == 0) ? Rat(1) : Rat(-1);
          Poly pw;
          pw[mono] = s;
          term = poly_mul(term, pw);
        } else {
          const int a = rs_->cartan[i][b];
          // (z_b - a z_i)^{e_b} expanded binomially
          Poly pw;
          for (int k = 0; k <= e[b]; ++k) {
            std::vector<int> mono(n, 0);
            mono[b] = e[b] - k;
            mono[i] = k;
            Rat coef = Rat(binom(e[b], k));
            Rat apow = 1;
            for (int t = 0; t < k; ++t) apow *= Rat(-a);
            poly_add_term(pw, mono, coef * apow);
          }
          term = poly_mul(term, pw);
        }
      }
      for (const auto& [e2, c2] : term) poly_add_term(out, e2, c2);
    }
    return out;
  }

  Poly divided_difference(int i, const Poly& f) const {
    Poly g = f;
    Poly sf = reflect(i, f);
    for (const auto& [e, c] : sf) poly_add_term(g, e, -c);
    // divide by y_i
    Poly out;
    for (const auto& [e, c] : g) {
      assert(e[i] >= 1 && "not divisible by y_i");
      std::vector<int> e2 = e;
      e2[i] -= 1;
      out[e2] = c;
    }
    return out;
  }

  Poly apply_dd_word(const std::vector<int>& word, Poly f) const {
    for (auto it = word.rbegin(); it != word.rend(); ++it)
      f = divided_difference(*it, f);
    return f;
  }

  // BGG representative of the codimension-l(w) class
  const Poly& schubert(const WeylElement& w) {
    auto it = cache_.find(w.word);
    if (it != cache_.end()) return it->second;
    WeylElement op = wy_->multiply(wy_->inverse(w), w0_);
    Poly p = apply_dd_word(op.word, top_class_);
    assert(poly_degree(p) <= w.length());
    return cache_.emplace(w.word, std::move(p)).first->second;
  }

  Rat integral(const Poly& f) const {
    Poly g = apply_dd_word(w0_.word, f);
    if (g.empty()) return 0;
    assert(g.size() == 1 && g.begin()->first == std::vector<int>(rs_->rank, 0));
    return g.begin()->second;
  }

  // triple intersection number on G/P in the codimension-indexed basis:
  // int_{G/P} k_a k_b k_c, all in W^P with l(a)+l(b)+l(c) = dim G/P
  Rat gp_triple(const ParabolicData& P, const WeylElement& a, const WeylElement& b,
                const WeylElement& c) {
    if (a.length() + b.length() + c.length() != P.dim_gp()) return 0;
    Poly f = poly_mul(schubert(a), schubert(b));
    f = poly_mul(f, schubert(c));
    f = poly_mul(f, schubert(P.w0_L));
    return integral(f);
  }

  const WeylElement& w0() const { return w0_; }

 private:
  const Weyl* wy_;
  const RootSystemData* rs_;
  WeylElement w0_;
  Poly top_class_;
  std::map<std::vector<int>, Poly> cache_;
};

// dual index on W^P: w -> w0 w w0^P (Poincare duality partner)
inline WeylElement wp_dual(const Weyl& wy, const ParabolicData& P, const WeylElement& w) {
  WeylElement d = wy.multiply(wy.multiply(wy.longest_element(), w), P.w0_L);
  assert(in_WP(wy, d, P));
  return d;
}

}  // namespace multcone
