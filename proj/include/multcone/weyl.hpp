// Weyl group elements, Bruhat combinatorics, parabolic (Levi) data.
//
// An element is stored as its integer action matrix on the root lattice
// (column j = image of alpha_j in simple-root coordinates) together with its
// canonical reduced word, the lexicographically least one. Two elements are
// equal iff their actions agree.
#pragma once

#include <deque>
#include <map>
#include <set>

#include "multcone/root_system.hpp"

namespace multcone {

using IMat = std::vector<std::vector<int>>;

inline IMat imat_identity(int n) {
  IMat m(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IMat imat_mul(const IMat& a, const IMat& b) {
  const int n = static_cast<int>(a.size());
  IMat r(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (a[i][k] != 0)
        for (int j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

inline Root imat_apply(const IMat& m, const Root& v) {
  const int n = static_cast<int>(m.size());
  Root r(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[i] += m[i][j] * v[j];
  return r;
}

inline IMat imat_inverse(const IMat& m) {
  const int n = static_cast<int>(m.size());
  QMat q = qmat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q[i][j] = m[i][j];
  QMat inv = mat_inverse(q);
  IMat r(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      assert(inv[i][j].get_den() == 1);
      r[i][j] = static_cast<int>(inv[i][j].get_num().get_si());
    }
  return r;
}

struct WeylElement {
  std::vector<int> word;  // canonical reduced word (0-based generator indices)
  IMat mat;               // action on the root lattice

  int length() const { return static_cast<int>(word.size()); }
  bool operator==(const WeylElement& o) const { return mat == o.mat; }
  bool operator!=(const WeylElement& o) const { return mat != o.mat; }
  // ordering used for all deterministic enumerations: (length, word lex)
  bool operator<(const WeylElement& o) const {
    if (word.size() != o.word.size()) return word.size() < o.word.size();
    return word < o.word;
  }
};

class Weyl {
 public:
  explicit Weyl(const RootSystemData& rs) : rs_(&rs) {
    const int n = rs.rank;
    simple_mats_.resize(n);
    for (int i = 0; i < n; ++i) {
      IMat m = imat_identity(n);
      for (int j = 0; j < n; ++j) m[i][j] -= rs.cartan[i][j];
      simple_mats_[i] = std::move(m);
    }
  }

  const RootSystemData& rs() const { return *rs_; }

  WeylElement identity() const {
    return WeylElement{{}, imat_identity(rs_->rank)};
  }

  WeylElement simple(int i) const { return from_matrix(simple_mats_[i]); }

  int length_of(const IMat& m) const {
    int len = 0;
    for (const Root& beta : rs_->positive_roots) {
      Root im = imat_apply(m, beta);
      if (!rs_->is_positive(im)) ++len;
    }
    return len;
  }

  std::vector<int> canonical_word(const IMat& m) const {
    std::vector<int> word;
    IMat cur = m;
    IMat inv = imat_inverse(m);
    const IMat id = imat_identity(rs_->rank);
    while (cur != id) {
      int pick = -1;
      for (int i = 0; i < rs_->rank; ++i) {
        // left descent: w^{-1} alpha_i < 0, i.e. column i of inv is negative
        bool neg = false, pos = false;
        for (int r = 0; r < rs_->rank; ++r) {
          if (inv[r][i] < 0) neg = true;
          if (inv[r][i] > 0) pos = true;
        }
        if (neg && !pos) {
          pick = i;
          break;
        }
      }
      assert(pick >= 0 && "no descent found for non-identity element");
      word.push_back(pick);
      cur = imat_mul(simple_mats_[pick], cur);
      inv = imat_mul(inv, simple_mats_[pick]);
    }
    return word;
  }

  WeylElement from_matrix(const IMat& m) const {
    return WeylElement{canonical_word(m), m};
  }

  WeylElement from_word(const std::vector<int>& word) const {
    IMat m = imat_identity(rs_->rank);
    for (int i : word) m = imat_mul(m, simple_mats_[i]);
    return from_matrix(m);
  }

  WeylElement multiply(const WeylElement& a, const WeylElement& b) const {
    return from_matrix(imat_mul(a.mat, b.mat));
  }

  WeylElement inverse(const WeylElement& a) const {
    return from_matrix(imat_inverse(a.mat));
  }

  WeylElement mul_simple_right(const WeylElement& a, int i) const {
    return from_matrix(imat_mul(a.mat, simple_mats_[i]));
  }

  Root act_root(const WeylElement& w, const Root& beta) const {
    return imat_apply(w.mat, beta);
  }

  // w(lambda) for a weight in fundamental-weight coordinates
  QVec act_weight(const WeylElement& w, const QVec& lambda) const {
    QVec v = lambda;
    for (auto it = w.word.rbegin(); it != w.word.rend(); ++it)
      v = rs_->reflect_weight(*it, v);
    return v;
  }

  // w(mu) for a coweight in fundamental-coweight coordinates
  QVec act_coweight(const WeylElement& w, const QVec& mu) const {
    QVec v = mu;
    for (auto it = w.word.rbegin(); it != w.word.rend(); ++it)
      v = rs_->reflect_coweight(*it, v);
    return v;
  }

  // reflection s_beta for a (positive) root beta
  WeylElement reflection(const Root& beta) const {
    const int n = rs_->rank;
    QVec cc = rs_->coroot_coords(beta);
    IMat m = imat_identity(n);
    for (int j = 0; j < n; ++j) {
      // alpha_j(beta^vee)
      Rat p = 0;
      for (int k = 0; k < n; ++k) p += cc[k] * Rat(rs_->cartan[k][j]);
      assert(p.get_den() == 1);
      const int pi = static_cast<int>(p.get_num().get_si());
      for (int r = 0; r < n; ++r) m[r][j] -= pi * beta[r];
    }
    return from_matrix(m);
  }

  WeylElement s_theta() const { return reflection(rs_->theta); }

  WeylElement longest_element() const {
    WeylElement w = identity();
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i = 0; i < rs_->rank; ++i) {
        Root im = act_root(w, rs_->simple_root(i));
        if (rs_->is_positive(im)) {
          w = mul_simple_right(w, i);
          changed = true;
          break;
        }
      }
    }
    return w;
  }

  // all covers v -> w = s_beta v with l(w) = l(v) + 1, as (beta, w)
  std::vector<std::pair<Root, WeylElement>> bruhat_covers_up(const WeylElement& v) const {
    std::vector<std::pair<Root, WeylElement>> out;
    const int lv = v.length();
    for (const Root& beta : rs_->positive_roots) {
      WeylElement sb = reflection(beta);
      IMat m = imat_mul(sb.mat, v.mat);
      if (length_of(m) == lv + 1) out.push_back({beta, from_matrix(m)});
    }
    return out;
  }

  std::string word_string(const WeylElement& w) const {
    if (w.word.empty()) return "e";
    std::string s;
    for (std::size_t k = 0; k < w.word.size(); ++k) {
      if (k) s += ' ';
      s += "s" + std::to_string(w.word[k] + 1);
    }
    return s;
  }

  const IMat& simple_mat(int i) const { return simple_mats_[i]; }

 private:
  const RootSystemData* rs_;
  std::vector<IMat> simple_mats_;
};

struct LeviComponent {
  std::vector<int> nodes;       // ambient simple indices, sorted
  ComponentType ctype;          // standard type + std->ambient map
  Root theta_k;                 // highest root of the component (ambient coords)
  Rat theta_norm2;              // (theta_k, theta_k) under the ambient form
  int dual_coxeter_k;           // intrinsic g*_k of the component
};

struct ParabolicData {
  std::vector<int> delta_P;  // Levi simple indices, sorted
  std::vector<int> s_P;      // complement Delta \ Delta_P, sorted
  std::vector<WeylElement> wp_reps;  // W^P by (length, canonical word)
  std::vector<LeviComponent> components;
  WeylElement w0_L;
  QVec x_P;                       // fcw coordinates (indicator of s_P)
  std::vector<Root> levi_positive_roots;
  std::vector<Root> complement_positive_roots;  // R+ \ R_L+

  bool is_maximal() const { return s_P.size() == 1; }

  int dim_gp() const { return static_cast<int>(complement_positive_roots.size()); }

  bool in_levi(const Root& beta) const {
    for (std::size_t j = 0; j < beta.size(); ++j) {
      if (beta[j] == 0) continue;
      bool found = false;
      for (int d : delta_P)
        if (d == static_cast<int>(j)) found = true;
      if (!found) return false;
    }
    return true;
  }
};

inline bool in_WP(const Weyl& wy, const WeylElement& w, const ParabolicData& P) {
  for (int j : P.delta_P) {
    Root im = wy.act_root(w, wy.rs().simple_root(j));
    if (!wy.rs().is_positive(im)) return false;
  }
  return true;
}

inline WeylElement minimal_rep(const Weyl& wy, const WeylElement& w, const ParabolicData& P) {
  WeylElement cur = w;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int j : P.delta_P) {
      Root im = wy.act_root(cur, wy.rs().simple_root(j));
      if (!wy.rs().is_positive(im)) {
        cur = wy.mul_simple_right(cur, j);
        changed = true;
        break;
      }
    }
  }
  return cur;
}

inline ParabolicData make_parabolic(const Weyl& wy, std::vector<int> delta_P) {
  const RootSystemData& rs = wy.rs();
  std::sort(delta_P.begin(), delta_P.end());
  ParabolicData P;
  P.delta_P = delta_P;
  for (int i = 0; i < rs.rank; ++i)
    if (!std::binary_search(delta_P.begin(), delta_P.end(), i)) P.s_P.push_back(i);

  P.x_P = qvec(rs.rank);
  for (int i : P.s_P) P.x_P[i] = 1;

  for (const Root& beta : rs.positive_roots) {
    bool levi = true;
    for (int j = 0; j < rs.rank; ++j)
      if (beta[j] != 0 && !std::binary_search(delta_P.begin(), delta_P.end(), j)) levi = false;
    (levi ? P.levi_positive_roots : P.complement_positive_roots).push_back(beta);
  }

  // minimal coset representatives via the W-orbit of a weight with
  // stabilizer exactly W_P
  QVec lam = qvec(rs.rank);
  for (int i : P.s_P) lam[i] = 1;
  std::map<QVec, bool> seen;
  std::deque<std::pair<QVec, WeylElement>> bfs;
  bfs.push_back({lam, wy.identity()});
  seen[lam] = true;
  std::vector<WeylElement> reps;
  while (!bfs.empty()) {
    auto [pt, w] = bfs.front();
    bfs.pop_front();
    reps.push_back(w);
    for (int i = 0; i < rs.rank; ++i) {
      QVec np = rs.reflect_weight(i, pt);
      if (!seen.count(np)) {
        seen[np] = true;
        bfs.push_back({np, wy.from_matrix(imat_mul(wy.simple_mat(i), w.mat))});
      }
    }
  }
  std::sort(reps.begin(), reps.end());
  P.wp_reps = std::move(reps);

  // longest element of the Levi Weyl group
  WeylElement w0l = wy.identity();
  bool changed = true;
  while (changed) {
    changed = false;
    for (int j : P.delta_P) {
      Root im = wy.act_root(w0l, rs.simple_root(j));
      if (rs.is_positive(im)) {
        w0l = wy.mul_simple_right(w0l, j);
        changed = true;
        break;
      }
    }
  }
  P.w0_L = w0l;

  // connected components of the Levi sub-diagram
  std::set<int> todo(delta_P.begin(), delta_P.end());
  while (!todo.empty()) {
    std::vector<int> comp;
    std::deque<int> q{*todo.begin()};
    todo.erase(todo.begin());
    while (!q.empty()) {
      int a = q.front();
      q.pop_front();
      comp.push_back(a);
      for (auto it = todo.begin(); it != todo.end();) {
        if (rs.cartan[a][*it] != 0) {
          q.push_back(*it);
          it = todo.erase(it);
        } else {
          ++it;
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    LeviComponent lc;
    lc.nodes = comp;
    lc.ctype = classify_component(rs, comp);
    // component highest root: maximal-height positive root supported on comp
    Root best;
    int best_h = -1;
    for (const Root& beta : P.levi_positive_roots) {
      bool on_comp = true;
      for (int j = 0; j < rs.rank; ++j)
        if (beta[j] != 0 && !std::binary_search(comp.begin(), comp.end(), j)) on_comp = false;
      if (!on_comp) continue;
      if (rs.height(beta) > best_h) {
        best_h = rs.height(beta);
        best = beta;
      }
    }
    lc.theta_k = best;
    lc.theta_norm2 = rs.root_norm2(best);
    // intrinsic dual Coxeter number: 1 + rho_k(theta_k^vee)
    Rat g = 1;
    const Rat dth = lc.theta_norm2 / 2;
    for (int j : comp) g += Rat(best[j]) * rs.dsym[j] / dth;
    assert(g.get_den() == 1);
    lc.dual_coxeter_k = static_cast<int>(g.get_num().get_si());
    P.components.push_back(std::move(lc));
  }
  return P;
}

inline ParabolicData maximal_parabolic(const Weyl& wy, int i_in_SP) {
  std::vector<int> levi;
  for (int j = 0; j < wy.rs().rank; ++j)
    if (j != i_in_SP) levi.push_back(j);
  return make_parabolic(wy, levi);
}

// rho^L = half sum of the Levi positive roots, as a weight of G (fw coords)
inline QVec rho_levi(const RootSystemData& rs, const ParabolicData& P) {
  QVec sum_alpha = qvec(rs.rank);
  for (const Root& beta : P.levi_positive_roots)
    for (int j = 0; j < rs.rank; ++j) sum_alpha[j] += beta[j];
  QVec w = qvec(rs.rank);
  for (int i = 0; i < rs.rank; ++i) {
    for (int j = 0; j < rs.rank; ++j) w[i] += Rat(rs.cartan[i][j]) * sum_alpha[j];
  }
  for (auto& x : w) x /= 2;
  return w;
}

// chi_w = rho - 2 rho^L + w^{-1} rho
inline QVec chi_weight(const Weyl& wy, const ParabolicData& P, const WeylElement& w) {
  const RootSystemData& rs = wy.rs();
  QVec res = rs.rho_weight();
  add_scaled(res, Rat(-2), rho_levi(rs, P));
  add_scaled(res, Rat(1), wy.act_weight(wy.inverse(w), rs.rho_weight()));
  return res;
}

// chi_e = 2 rho - 2 rho^L = sum of roots in R+ \ R_L+
inline QVec chi_e_weight(const RootSystemData& rs, const ParabolicData& P) {
  QVec res = rs.rho_weight();
  add_scaled(res, Rat(1), rs.rho_weight());
  add_scaled(res, Rat(-2), rho_levi(rs, P));
  return res;
}

// restriction of a weight to T_{L'}: values on the Levi simple coroots,
// keyed by ambient node index
inline std::map<int, Rat> restrict_to_levi(const RootSystemData& rs, const ParabolicData& P,
                                           const QVec& lambda) {
  std::map<int, Rat> out;
  for (int j : P.delta_P) out[j] = lambda[j];
  return out;
}

// Reduce a coweight into the closed fundamental alcove of the Levi:
// 0 <= alpha(mu) for Levi simple roots, theta_k(mu) <= 1 per component.
// Reflections lie in the affine Weyl group of L, so all omega_j (j in S_P)
// pairings are preserved.
inline QVec levi_alcove_reduce(const RootSystemData& rs, const ParabolicData& P, QVec mu) {
  for (int guard = 0; guard < 100000; ++guard) {
    bool changed = false;
    for (int j : P.delta_P) {
      if (mu[j] < 0) {
        mu = rs.reflect_coweight(j, mu);
        changed = true;
      }
    }
    if (!changed) {
      for (const LeviComponent& lc : P.components) {
        Rat t = rs.root_pair_coweight(lc.theta_k, mu);
        if (t > 1) {
          QVec thv = rs.coroot_fcw(lc.theta_k);
          add_scaled(mu, -(t - 1), thv);
          changed = true;
        }
      }
    }
    if (!changed) return mu;
  }
  throw std::logic_error("alcove reduction did not terminate");
}

enum class ThetaCase { Same, Up, Down };

struct ThetaShift {
  ThetaCase c;
  WeylElement u_prime;
  Root alpha;  // u^{-1} theta (Up) or -u^{-1} theta (Down); empty for Same
};

// Behaviour of u in W^P under left multiplication by s_theta (Lemma on the
// minimum representative of s_theta u W_P).
inline ThetaShift theta_shift(const Weyl& wy, const ParabolicData& P, const WeylElement& u) {
  const RootSystemData& rs = wy.rs();
  Root a = wy.act_root(wy.inverse(u), rs.theta);
  WeylElement up = minimal_rep(wy, wy.multiply(wy.s_theta(), u), P);
  bool levi = true;
  {
    Root abs = a;
    if (!rs.is_positive(abs))
      for (auto& c : abs) c = -c;
    levi = P.in_levi(abs);
  }
  if (levi) return ThetaShift{ThetaCase::Same, up, {}};
  if (rs.is_positive(a)) return ThetaShift{ThetaCase::Up, up, a};
  Root na = a;
  for (auto& c : na) c = -c;
  return ThetaShift{ThetaCase::Down, up, na};
}

}  // namespace multcone
