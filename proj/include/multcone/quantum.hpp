// Small quantum cohomology of G/P and the Belkale-Kumar deformed product.
//
// Internal basis: classes k_w of codimension l(w), w in W^P. Structure
// constants come from the quantum Chevalley formula plus associativity:
// three-point invariants I(a,b,c;d) of expected dimension zero are solved
// degree by degree from the linear relations
//   [(k_{s_i} * k_{u'}) * k_v]_{q^d k_w} = [k_{s_i} * (k_{u'} * k_v)]_{q^d k_w}
// seeded by the classical ring (coinvariant integrals) and the Chevalley
// coefficients. Paper-style class labels (Schubert cells of dimension l(w))
// convert through the duality w -> w0 w w0^P.
#pragma once

#include <mutex>
#include <shared_mutex>
#include <sstream>

#include "multcone/coinvariant.hpp"

namespace multcone {

struct GroupContext {
  RootSystemData rs;
  std::unique_ptr<Weyl> weyl;
  std::unique_ptr<CoinvariantRing> ring;

  GroupContext(char type, int rank) : rs(build_root_system(type, rank)) {
    weyl = std::make_unique<Weyl>(rs);
    ring = std::make_unique<CoinvariantRing>(*weyl);
  }
  GroupContext(const GroupContext&) = delete;
};

inline std::shared_ptr<GroupContext> group_context(char type, int rank) {
  static std::map<std::pair<char, int>, std::shared_ptr<GroupContext>> registry;
  static std::shared_mutex mtx;
  const auto key = std::make_pair(type, rank);
  {
    std::shared_lock lk(mtx);
    auto it = registry.find(key);
    if (it != registry.end()) return it->second;
  }
  std::unique_lock lk(mtx);
  auto it = registry.find(key);
  if (it != registry.end()) return it->second;
  auto ctx = std::make_shared<GroupContext>(type, rank);
  registry.emplace(key, ctx);
  return ctx;
}

// Effective curve class in H_2(G/P): coefficients over S_P (aligned with
// ParabolicData::s_P).
struct DegreeVector {
  std::vector<int> a;

  bool effective() const {
    for (int x : a)
      if (x < 0) return false;
    return true;
  }
  bool zero() const {
    for (int x : a)
      if (x != 0) return false;
    return true;
  }
  bool operator==(const DegreeVector& o) const { return a == o.a; }
  bool operator<(const DegreeVector& o) const { return a < o.a; }
  DegreeVector operator+(const DegreeVector& o) const {
    DegreeVector r = *this;
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
    return r;
  }
  DegreeVector operator-(const DegreeVector& o) const {
    DegreeVector r = *this;
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a[i];
    return r;
  }
  std::string str() const {
    if (a.size() == 1) return std::to_string(a[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(a[i]);
    }
    return s + ")";
  }
};

// q^d k_w combinations; keys are (degree coefficients, basis index)
using QClass = std::map<std::pair<std::vector<int>, int>, Rat>;

struct UnresolvedConstant : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class QuantumEngine {
 public:
  QuantumEngine(std::shared_ptr<GroupContext> ctx, std::vector<int> delta_P)
      : ctx_(std::move(ctx)),
        P_(make_parabolic(*ctx_->weyl, std::move(delta_P))) {
    const Weyl& wy = *ctx_->weyl;
    basis_ = P_.wp_reps;
    for (std::size_t i = 0; i < basis_.size(); ++i) index_[basis_[i].word] = static_cast<int>(i);
    dual_.resize(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      WeylElement d = wp_dual(wy, P_, basis_[i]);
      dual_[i] = idx(d);
    }
    chi_e_ = chi_e_weight(ctx_->rs, P_);
    degq_.resize(P_.s_P.size());
    for (std::size_t k = 0; k < P_.s_P.size(); ++k) {
      Rat v = ctx_->rs.weight_pair_coroot(chi_e_, ctx_->rs.simple_root(P_.s_P[k]));
      assert(v.get_den() == 1);
      degq_[k] = static_cast<int>(v.get_num().get_si());
      assert(degq_[k] >= 2);
    }
    build_chevalley();
  }

  const ParabolicData& parabolic() const { return P_; }
  const Weyl& weyl() const { return *ctx_->weyl; }
  const RootSystemData& rs() const { return ctx_->rs; }
  const std::vector<WeylElement>& basis() const { return basis_; }
  int dim_gp() const { return P_.dim_gp(); }

  int idx(const WeylElement& w) const {
    auto it = index_.find(w.word);
    if (it == index_.end()) throw std::invalid_argument("element not in W^P");
    return it->second;
  }
  int dual_index(int i) const { return dual_[i]; }
  WeylElement dual_element(const WeylElement& w) const { return basis_[dual_[idx(w)]]; }

  int c1_integral(const DegreeVector& d) const {
    int t = 0;
    for (std::size_t k = 0; k < d.a.size(); ++k) t += d.a[k] * degq_[k];
    return t;
  }

  int deg_q(int k) const { return degq_[k]; }

  // degree of the T-fixed curve C_alpha, alpha in R+ \ R_L+
  DegreeVector curve_degree(const Root& alpha) const {
    if (P_.in_levi(alpha))
      throw std::invalid_argument("curve_degree: root lies in the Levi");
    DegreeVector d;
    d.a.resize(P_.s_P.size());
    for (std::size_t k = 0; k < P_.s_P.size(); ++k) {
      Rat v = ctx_->rs.weight_pair_coroot(ctx_->rs.fundamental_weight(P_.s_P[k]), alpha);
      assert(v.get_den() == 1);
      d.a[k] = static_cast<int>(v.get_num().get_si());
    }
    return d;
  }

  DegreeVector zero_degree() const {
    DegreeVector d;
    d.a.assign(P_.s_P.size(), 0);
    return d;
  }

  // quantum Chevalley product k_{s_i} * k_u (i a position into s_P)
  const QClass& chevalley(int spos, int u) const { return chev_[spos][u]; }

  // three-point invariant of expected dimension zero, internal (codim) labels
  Rat invariant(int a, int b, int c, const DegreeVector& d) {
    if (!d.effective()) return 0;
    const int t = c1_integral(d);
    if (len(a) + len(b) + len(c) != dim_gp() + t) return 0;
    if (auto v = known_invariant(a, b, c, d)) return *v;
    ensure_level(t);
    if (auto v = known_invariant(a, b, c, d)) return *v;
    throw UnresolvedConstant("unresolved quantum structure constant <" +
                             weyl().word_string(basis_[a]) + ", " +
                             weyl().word_string(basis_[b]) + ", " +
                             weyl().word_string(basis_[c]) + ">_" + d.str() + " on " +
                             rs().name() + "/P" + sp_label());
  }

  // full quantum product of two internal classes
  QClass quantum_product(int u, int v) {
    QClass out;
    const int lu = len(u), lv = len(v);
    for (int t = 0; t <= lu + lv; ++t) {
      for (const DegreeVector& d : degrees_at_level(t)) {
        for (int w = 0; w < nbasis(); ++w) {
          if (len(w) != lu + lv - t) continue;
          Rat c = invariant(u, v, dual_[w], d);
          if (c != 0) out[{d.a, w}] = c;
        }
      }
    }
    return out;
  }

  QClass quantum_product(const QClass& x, int v) {
    QClass out;
    for (const auto& [key, coef] : x) {
      DegreeVector d0;
      d0.a = key.first;
      QClass part = quantum_product(key.second, v);
      for (const auto& [k2, c2] : part) {
        DegreeVector d;
        d.a = k2.first;
        DegreeVector sum = d0 + d;
        auto& slot = out[{sum.a, k2.second}];
        slot += coef * c2;
        if (slot == 0) out.erase({sum.a, k2.second});
      }
    }
    return out;
  }

  // s-point Gromov-Witten invariant with paper-style labels (classes indexed
  // by the dimension of their Schubert cell); s >= 3, expected dimension 0.
  Rat gw_paper(const std::vector<WeylElement>& us, const DegreeVector& d) {
    if (us.size() < 3) throw std::invalid_argument("gw invariants need s >= 3 classes");
    if (!d.effective()) return 0;
    int codim_sum = 0;
    for (const auto& u : us) codim_sum += dim_gp() - u.length();
    if (codim_sum != dim_gp() + c1_integral(d)) return 0;
    // iterated product of the dual (codim-indexed) classes, then pairing
    std::vector<int> ids;
    for (const auto& u : us) ids.push_back(dual_[idx(u)]);
    QClass acc;
    acc[{zero_degree().a, ids[0]}] = 1;
    for (std::size_t k = 1; k + 1 < ids.size(); ++k) acc = quantum_product(acc, ids[k]);
    auto it = acc.find({d.a, idx(us.back())});
    return it == acc.end() ? Rat(0) : it->second;
  }

  // expected-dimension tag of (paper labels, degree): codim sum - dim - c1
  int excess(const std::vector<WeylElement>& us, const DegreeVector& d) {
    int codim_sum = 0;
    for (const auto& u : us) codim_sum += dim_gp() - u.length();
    return codim_sum - dim_gp() - c1_integral(d);
  }

  // numerical Levi-movability criterion (paper labels)
  bool levi_movable(const std::vector<WeylElement>& us, const DegreeVector& d) {
    if (gw_paper(us, d) == 0) return false;
    return movability_conditions_hold(us, d);
  }

  bool movability_conditions_hold(const std::vector<WeylElement>& us, const DegreeVector& d) {
    const RootSystemData& R = rs();
    const Weyl& wy = weyl();
    // d~ = sum a_k alpha_{i_k}^vee as a coweight
    QVec dtilde = qvec(R.rank);
    for (std::size_t k = 0; k < d.a.size(); ++k)
      add_scaled(dtilde, Rat(d.a[k]), R.coroot_fcw(R.simple_root(P_.s_P[k])));
    QVec chi_sum = qvec(R.rank);
    for (const auto& u : us) add_scaled(chi_sum, Rat(1), chi_weight(wy, P_, u));
    for (int i : P_.s_P) {
      QVec xi = qvec(R.rank);
      xi[i] = 1;
      Rat val = R.weight_pair_coweight(chi_e_, xi) - R.weight_pair_coweight(chi_sum, xi);
      for (const Root& alpha : P_.complement_positive_roots)
        val += Rat(alpha[i]) * R.root_pair_coweight(alpha, dtilde);
      if (val != 0) return false;
    }
    return true;
  }

  // equivalent filtration form of Levi-movability (maximal P), kept as an
  // independent cross-check
  bool movability_filtration_form(const std::vector<WeylElement>& us, const DegreeVector& d) {
    const RootSystemData& R = rs();
    const Weyl& wy = weyl();
    int jmax = 0;
    for (const Root& g : P_.complement_positive_roots) {
      Rat v = R.root_pair_coweight(g, P_.x_P);
      jmax = std::max(jmax, static_cast<int>(v.get_num().get_si()));
    }
    for (int j = 1; j <= jmax; ++j) {
      std::vector<Root> Sj;
      for (const Root& g : P_.complement_positive_roots)
        if (R.root_pair_coweight(g, P_.x_P) <= j) Sj.push_back(g);
      Rat deg = 0;
      for (std::size_t k = 0; k < d.a.size(); ++k) {
        Rat col = 0;
        for (const Root& g : Sj)
          col += R.weight_pair_coroot(R.alpha_to_weight(g), R.simple_root(P_.s_P[k]));
        deg += Rat(d.a[k]) * col;
      }
      Rat chi = Rat(static_cast<int>(Sj.size())) + deg;
      Rat rhs = 0;
      for (const auto& u : us) {
        int drop = 0;
        for (const Root& g : Sj)
          if (!R.is_positive(wy.act_root(u, g))) ++drop;
        rhs += Rat(static_cast<int>(Sj.size()) - drop);
      }
      if (chi != rhs) return false;
    }
    return true;
  }

  Rat deformed_invariant(const std::vector<WeylElement>& us, const DegreeVector& d) {
    if (excess(us, d) != 0) return 0;
    Rat g = gw_paper(us, d);
    if (g == 0) return 0;
    return movability_conditions_hold(us, d) ? g : Rat(0);
  }

  // classical product in the internal (codim) basis, as a QClass at q^0
  QClass classical_product(int u, int v) {
    QClass out;
    for (int w = 0; w < nbasis(); ++w) {
      if (len(w) != len(u) + len(v)) continue;
      Rat c = classical_invariant(u, v, dual_[w]);
      if (c != 0) out[{zero_degree().a, w}] = c;
    }
    return out;
  }

  Rat classical_invariant(int a, int b, int c) {
    std::array<int, 3> key{a, b, c};
    std::sort(key.begin(), key.end());
    {
      std::shared_lock lk(mtx_);
      auto it = classical_.find(key);
      if (it != classical_.end()) return it->second;
    }
    Rat v = ctx_->ring->gp_triple(P_, basis_[key[0]], basis_[key[1]], basis_[key[2]]);
    std::unique_lock lk(mtx_);
    return classical_.emplace(key, v).first->second;
  }

  int nbasis() const { return static_cast<int>(basis_.size()); }
  int len(int i) const { return basis_[i].length(); }

  std::vector<DegreeVector> degrees_at_level(int t) const {
    std::vector<DegreeVector> out;
    DegreeVector cur = zero_degree();
    enumerate_degrees(t, 0, cur, out);
    return out;
  }

  // make every structure constant up to c1-level t available
  void ensure_level(int t) {
    std::unique_lock lk(mtx_);
    for (int lv = solved_level_ + 1; lv <= t; ++lv) {
      for (const DegreeVector& d : degrees_at_level_nolock(lv)) solve_degree(d, lv);
      solved_level_ = lv;
    }
  }

  std::string sp_label() const {
    std::string s;
    for (std::size_t k = 0; k < P_.s_P.size(); ++k) {
      if (k) s += ",";
      s += std::to_string(P_.s_P[k] + 1);
    }
    return s;
  }

 private:
  void enumerate_degrees(int remaining, std::size_t pos, DegreeVector& cur,
                         std::vector<DegreeVector>& out) const {
    if (pos == degq_.size()) {
      if (remaining == 0) out.push_back(cur);
      return;
    }
    for (int a = 0; a * degq_[pos] <= remaining; ++a) {
      cur.a[pos] = a;
      enumerate_degrees(remaining - a * degq_[pos], pos + 1, cur, out);
    }
    cur.a[pos] = 0;
  }

  std::vector<DegreeVector> degrees_at_level_nolock(int t) const {
    std::vector<DegreeVector> out;
    DegreeVector cur = zero_degree();
    enumerate_degrees(t, 0, cur, out);
    return out;
  }

  void build_chevalley() {
    const RootSystemData& R = rs();
    const Weyl& wy = weyl();
    chev_.assign(P_.s_P.size(), std::vector<QClass>(basis_.size()));
    for (std::size_t k = 0; k < P_.s_P.size(); ++k) {
      const int i = P_.s_P[k];
      for (int u = 0; u < nbasis(); ++u) {
        QClass cls;
        for (const Root& beta : P_.complement_positive_roots) {
          Rat coefq = R.weight_pair_coroot(R.fundamental_weight(i), beta);
          assert(coefq.get_den() == 1);
          if (coefq == 0) continue;
          WeylElement usb = wy.multiply(basis_[u], wy.reflection(beta));
          // classical term: u s_beta in W^P with length l(u)+1
          if (usb.length() == len(u) + 1 && in_WP(wy, usb, P_)) {
            cls[{zero_degree().a, idx(usb)}] += coefq;
          }
          // quantum term: min rep of u s_beta of length l(u)+1-int_{d(beta)}c1
          WeylElement bar = minimal_rep(wy, usb, P_);
          DegreeVector db = curve_degree(beta);
          const int drop = len(u) + 1 - c1_integral(db);
          if (bar.length() == drop) {
            // Lemma `above0` in the equality case: u beta > 0
            assert(R.is_positive(wy.act_root(basis_[u], beta)));
            cls[{db.a, idx(bar)}] += coefq;
          }
        }
        for (auto it = cls.begin(); it != cls.end();) {
          if (it->second == 0)
            it = cls.erase(it);
          else
            ++it;
        }
        chev_[k][u] = std::move(cls);
      }
    }
  }

  using TripleKey = std::array<int, 3>;
  struct DegKey {
    TripleKey t;
    std::vector<int> d;
    bool operator<(const DegKey& o) const {
      if (t != o.t) return t < o.t;
      return d < o.d;
    }
  };

  std::optional<Rat> known_invariant(int a, int b, int c, const DegreeVector& d) {
    TripleKey key{a, b, c};
    std::sort(key.begin(), key.end(), [&](int x, int y) { return x < y; });
    if (d.zero()) return classical_invariant(a, b, c);
    // unit axiom
    if (len(key[0]) == 0) return Rat(0);
    if (len(key[0]) == 1) {
      // divisor class k_{s_i}: read off the quantum Chevalley coefficient
      const int spos = spos_of_length_one(key[0]);
      const QClass& cls = chev_[spos][key[1]];
      auto it = cls.find({d.a, dual_[key[2]]});
      return it == cls.end() ? Rat(0) : it->second;
    }
    std::shared_lock lk(mtx_);
    auto it = solved_.find(DegKey{key, d.a});
    if (it != solved_.end()) return it->second;
    return std::nullopt;
  }

  int spos_of_length_one(int b) const {
    // basis element of length 1 is s_i for some i in S_P
    const int i = basis_[b].word[0];
    for (std::size_t k = 0; k < P_.s_P.size(); ++k)
      if (P_.s_P[k] == i) return static_cast<int>(k);
    throw std::logic_error("length-one class not indexed by S_P");
  }

  // --- associativity solver ------------------------------------------------

  std::optional<Rat> known_nolock(int a, int b, int c, const DegreeVector& d) {
    if (!d.effective()) return Rat(0);
    const int t = c1_integral(d);
    if (len(a) + len(b) + len(c) != dim_gp() + t) return Rat(0);
    TripleKey key{a, b, c};
    std::sort(key.begin(), key.end());
    if (d.zero()) {
      auto it = classical_.find(key);
      if (it != classical_.end()) return it->second;
      Rat v = ctx_->ring->gp_triple(P_, basis_[key[0]], basis_[key[1]], basis_[key[2]]);
      classical_.emplace(key, v);
      return v;
    }
    if (len(key[0]) == 0) return Rat(0);
    if (len(key[0]) == 1) {
      const int spos = spos_of_length_one(key[0]);
      const QClass& cls = chev_[spos][key[1]];
      auto it = cls.find({d.a, dual_[key[2]]});
      return it == cls.end() ? Rat(0) : it->second;
    }
    auto it = solved_.find(DegKey{key, d.a});
    if (it != solved_.end()) return it->second;
    return std::nullopt;
  }

  struct LinearSystem {
    std::map<DegKey, int> ids;
    std::vector<DegKey> keys;
    // reduced rows by pivot id: row = (coeffs, rhs)
    std::map<int, std::pair<std::map<int, Rat>, Rat>> pivots;

    int id_of(const DegKey& k) {
      auto it = ids.find(k);
      if (it != ids.end()) return it->second;
      const int id = static_cast<int>(keys.size());
      ids.emplace(k, id);
      keys.push_back(k);
      return id;
    }

    // insert row; returns false on inconsistency
    bool add_row(std::map<int, Rat> row, Rat rhs) {
      while (!row.empty()) {
        const int p = row.begin()->first;
        auto it = pivots.find(p);
        if (it == pivots.end()) {
          const Rat inv = 1 / row.begin()->second;
          for (auto& [j, c] : row) c *= inv;
          rhs *= inv;
          pivots.emplace(p, std::make_pair(std::move(row), rhs));
          return true;
        }
        const Rat f = row.begin()->second;
        for (const auto& [j, c] : it->second.first) {
          auto jt = row.find(j);
          if (jt == row.end()) {
            row.emplace(j, -f * c);
          } else {
            jt->second -= f * c;
            if (jt->second == 0) row.erase(jt);
          }
        }
        rhs -= f * it->second.second;
      }
      return rhs == 0;
    }

    // back-substitute to values; nullopt entries remain unresolved
    std::vector<std::optional<Rat>> solve() const {
      std::vector<std::optional<Rat>> val(keys.size());
      // iterate until stable (pivot rows may reference later pivots)
      bool changed = true;
      while (changed) {
        changed = false;
        for (const auto& [p, rowrhs] : pivots) {
          if (val[p]) continue;
          Rat v = rowrhs.second;
          bool ok = true;
          for (const auto& [j, c] : rowrhs.first) {
            if (j == p) continue;
            if (!val[j]) {
              ok = false;
              break;
            }
            v -= c * (*val[j]);
          }
          if (ok) {
            val[p] = v;
            changed = true;
          }
        }
      }
      return val;
    }
  };

  void add_known_or_unknown(LinearSystem& sys, std::map<int, Rat>& row, Rat& rhs,
                            const Rat& coef, int a, int b, int c, const DegreeVector& d,
                            const DegreeVector& target) {
    if (coef == 0) return;
    if (!d.effective()) return;
    const int t = c1_integral(d);
    if (len(a) + len(b) + len(c) != dim_gp() + t) return;
    if (d == target) {
      TripleKey key{a, b, c};
      std::sort(key.begin(), key.end());
      if (len(key[0]) >= 2) {
        const int id = sys.id_of(DegKey{key, d.a});
        row[id] += coef;
        if (row[id] == 0) row.erase(id);
        return;
      }
    }
    auto v = known_nolock(a, b, c, d);
    assert(v && "lower-degree invariant must be solved already");
    rhs -= coef * (*v);
  }

  // all (coefficient, degree, class) terms of k_{s_i} * k_z
  struct ChevTerm {
    Rat coef;
    DegreeVector d;
    int x;
  };
  std::vector<ChevTerm> chev_terms(int spos, int z) const {
    std::vector<ChevTerm> out;
    for (const auto& [key, c] : chev_[spos][z]) {
      DegreeVector d;
      d.a = key.first;
      out.push_back({c, d, key.second});
    }
    return out;
  }

  void solve_degree(const DegreeVector& d, int level) {
    LinearSystem sys;
    // register all unknowns at this degree
    const int total = dim_gp() + level;
    for (int a = 0; a < nbasis(); ++a) {
      if (len(a) < 2) continue;
      for (int b = a; b < nbasis(); ++b) {
        if (len(b) < 2) continue;
        for (int c = b; c < nbasis(); ++c) {
          if (len(c) < 2) continue;
          if (len(a) + len(b) + len(c) == total) sys.id_of(DegKey{{a, b, c}, d.a});
        }
      }
    }
    if (sys.keys.empty()) return;

    auto emit_divisor_equations = [&]() {
      for (std::size_t spos = 0; spos < P_.s_P.size(); ++spos) {
        for (int up = 0; up < nbasis(); ++up) {
          if (len(up) == 0) continue;
          auto terms = chev_terms(static_cast<int>(spos), up);
          for (int v = 0; v < nbasis(); ++v) {
            const int lw = 1 + len(up) + len(v) - level;
            if (lw < 0 || lw > dim_gp()) continue;
            for (int w = 0; w < nbasis(); ++w) {
              if (len(w) != lw) continue;
              std::map<int, Rat> row;
              Rat rhs = 0;
              // (k_si * k_up) * k_v
              for (const auto& tm : terms)
                add_known_or_unknown(sys, row, rhs, tm.coef, tm.x, v, dual_[w], d - tm.d, d);
              // - k_si * (k_up * k_v): sum over intermediate degree d2 and z
              for (int t2 = 0; t2 <= level; ++t2) {
                for (const DegreeVector& d2 : degrees_at_level_nolock(t2)) {
                  bool leq = true;
                  for (std::size_t q = 0; q < d2.a.size(); ++q)
                    if (d2.a[q] > d.a[q]) leq = false;
                  if (!leq) continue;
                  const int lz = len(up) + len(v) - t2;
                  if (lz < 0 || lz > dim_gp()) continue;
                  for (int z = 0; z < nbasis(); ++z) {
                    if (len(z) != lz) continue;
                    // coefficient of q^{d-d2} k_w in k_si * k_z
                    auto fit = chev_[spos][z].find({(d - d2).a, w});
                    if (fit == chev_[spos][z].end()) continue;
                    add_known_or_unknown(sys, row, rhs, -fit->second, up, v, dual_[z], d2, d);
                  }
                }
              }
              if (!row.empty() || rhs != 0) {
                if (!sys.add_row(std::move(row), rhs))
                  throw std::logic_error("inconsistent associativity system");
              }
            }
          }
        }
      }
    };

    emit_divisor_equations();
    auto vals = sys.solve();
    bool all = true;
    for (std::size_t k = 0; k < sys.keys.size(); ++k)
      if (!vals[k]) all = false;

    if (!all) {
      // second pass: general associativity (k_a * k_b) * k_v = k_a * (k_b * k_v)
      for (int a = 0; a < nbasis() && !all; ++a) {
        if (len(a) < 2) continue;
        for (int b = 0; b < nbasis(); ++b) {
          if (len(b) < 2) continue;
          for (int v = 0; v < nbasis(); ++v) {
            const int lw = len(a) + len(b) + len(v) - level;
            if (lw < 0 || lw > dim_gp()) continue;
            for (int w = 0; w < nbasis(); ++w) {
              if (len(w) != lw) continue;
              std::map<int, Rat> row;
              Rat rhs = 0;
              bool usable = true;
              // sum over splittings d = d1 + d2
              for (int t1 = 0; t1 <= level && usable; ++t1) {
                for (const DegreeVector& d1 : degrees_at_level_nolock(t1)) {
                  bool leq = true;
                  for (std::size_t q = 0; q < d1.a.size(); ++q)
                    if (d1.a[q] > d.a[q]) leq = false;
                  if (!leq) continue;
                  const DegreeVector d2 = d - d1;
                  // LHS: sum_x I(a,b,dual x; d1) I(x,v,dual w; d2)
                  const int lx = len(a) + len(b) - t1;
                  if (lx >= 0 && lx <= dim_gp()) {
                    for (int x = 0; x < nbasis(); ++x) {
                      if (len(x) != lx) continue;
                      if (t1 > 0 && t1 < level) {
                        auto v1 = known_nolock(a, b, dual_[x], d1);
                        auto v2 = known_nolock(x, v, dual_[w], d2);
                        assert(v1 && v2);
                        rhs -= (*v1) * (*v2);
                      } else if (t1 == 0) {
                        auto v1 = known_nolock(a, b, dual_[x], d1);
                        assert(v1);
                        add_known_or_unknown(sys, row, rhs, *v1, x, v, dual_[w], d2, d);
                      } else {  // t1 == level: d2 = 0 classical second factor
                        auto v2 = known_nolock(x, v, dual_[w], d2);
                        assert(v2);
                        add_known_or_unknown(sys, row, rhs, *v2, a, b, dual_[x], d1, d);
                      }
                    }
                  }
                  // RHS (subtract): sum_z I(b,v,dual z;d1) I(a,z,dual w;d2)
                  const int lz = len(b) + len(v) - t1;
                  if (lz >= 0 && lz <= dim_gp()) {
                    for (int z = 0; z < nbasis(); ++z) {
                      if (len(z) != lz) continue;
                      if (t1 > 0 && t1 < level) {
                        auto v1 = known_nolock(b, v, dual_[z], d1);
                        auto v2 = known_nolock(a, z, dual_[w], d2);
                        assert(v1 && v2);
                        rhs += (*v1) * (*v2);
                      } else if (t1 == 0) {
                        auto v1 = known_nolock(b, v, dual_[z], d1);
                        assert(v1);
                        add_known_or_unknown(sys, row, rhs, -(*v1), a, z, dual_[w], d2, d);
                      } else {
                        auto v2 = known_nolock(a, z, dual_[w], d2);
                        assert(v2);
                        add_known_or_unknown(sys, row, rhs, -(*v2), b, v, dual_[z], d1, d);
                      }
                    }
                  }
                }
              }
              if (!row.empty() || rhs != 0) {
                if (!sys.add_row(std::move(row), rhs))
                  throw std::logic_error("inconsistent associativity system");
              }
            }
          }
        }
        vals = sys.solve();
        all = true;
        for (std::size_t k = 0; k < sys.keys.size(); ++k)
          if (!vals[k]) all = false;
      }
    }

    for (std::size_t k = 0; k < sys.keys.size(); ++k) {
      if (vals[k]) solved_.emplace(sys.keys[k], *vals[k]);
    }
    if (!all) {
      for (std::size_t k = 0; k < sys.keys.size(); ++k) {
        if (!vals[k]) unresolved_.insert(sys.keys[k]);
      }
    }
  }

  std::shared_ptr<GroupContext> ctx_;
  ParabolicData P_;
  std::vector<WeylElement> basis_;
  std::map<std::vector<int>, int> index_;
  std::vector<int> dual_;
  QVec chi_e_;
  std::vector<int> degq_;
  std::vector<std::vector<QClass>> chev_;  // [spos][u]

  mutable std::shared_mutex mtx_;
  std::map<TripleKey, Rat> classical_;
  std::map<DegKey, Rat> solved_;
  std::set<DegKey> unresolved_;
  int solved_level_ = 0;
};

// engine registry keyed by (type, rank, Levi subset)
inline std::shared_ptr<QuantumEngine> quantum_engine(char type, int rank,
                                                     std::vector<int> delta_P) {
  static std::map<std::tuple<char, int, std::vector<int>>, std::shared_ptr<QuantumEngine>> reg;
  static std::shared_mutex mtx;
  std::sort(delta_P.begin(), delta_P.end());
  const auto key = std::make_tuple(type, rank, delta_P);
  {
    std::shared_lock lk(mtx);
    auto it = reg.find(key);
    if (it != reg.end()) return it->second;
  }
  std::unique_lock lk(mtx);
  auto it = reg.find(key);
  if (it != reg.end()) return it->second;
  auto eng = std::make_shared<QuantumEngine>(group_context(type, rank), delta_P);
  reg.emplace(key, eng);
  return eng;
}

inline std::shared_ptr<QuantumEngine> quantum_engine_maximal(char type, int rank, int i_sp) {
  std::vector<int> levi;
  for (int j = 0; j < rank; ++j)
    if (j != i_sp) levi.push_back(j);
  return quantum_engine(type, rank, levi);
}

}  // namespace multcone
