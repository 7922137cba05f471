#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "multcone/quantum.hpp"

using namespace multcone;

namespace {

WeylElement word1(const Weyl& wy, std::initializer_list<int> letters_1based) {
  std::vector<int> w;
  for (int i : letters_1based) w.push_back(i - 1);
  return wy.from_word(w);
}

DegreeVector deg1(QuantumEngine& e, int d) {
  DegreeVector out = e.zero_degree();
  REQUIRE(out.a.size() == 1);
  out.a[0] = d;
  return out;
}

// ---------------------------------------------------------------------------
// Oracle 1: QH*(P^1): h * h = q.
// Oracle 2: quantum Monk rule for Fl(3) on S_3 permutations (Fomin-
// Gelfand-Postnikov): sigma_{s_r} * sigma_w sums sigma_{w t_{ab}} over
// a <= r < b with l(w t_{ab}) = l(w) + 1, plus q_a...q_{b-1} sigma_{w t_{ab}}
// over those with l(w t_{ab}) = l(w) - 2(b-a) + 1.
// ---------------------------------------------------------------------------

using Perm = std::array<int, 3>;  // one-line notation on {0,1,2}

Perm perm_id() { return {0, 1, 2}; }
Perm perm_mul(const Perm& p, const Perm& q) {
  // (p*q)(i) = p(q(i))
  return {p[q[0]], p[q[1]], p[q[2]]};
}
Perm transposition(int a, int b) {
  Perm t = perm_id();
  std::swap(t[a], t[b]);
  return t;
}
int perm_len(const Perm& p) {
  int inv = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (p[i] > p[j]) ++inv;
  return inv;
}

struct MonkTerm {
  Perm w;
  int qa = 0, qb = 0;  // exponents of q_1, q_2
};

std::vector<MonkTerm> monk_times_s1(const Perm& w) {
  std::vector<MonkTerm> out;
  const int lw = perm_len(w);
  for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 1}, {0, 2}}) {
    Perm wt = perm_mul(w, transposition(a, b));
    if (perm_len(wt) == lw + 1) out.push_back({wt, 0, 0});
    if (perm_len(wt) == lw - 2 * (b - a) + 1) {
      MonkTerm t{wt, 0, 0};
      for (int k = a; k < b; ++k) (k == 0 ? t.qa : t.qb) += 1;
      out.push_back(t);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("QH*(P^1): sigma_s * sigma_s = q") {
  auto eng = quantum_engine('A', 1, {});
  const Weyl& wy = eng->weyl();
  int s = eng->idx(wy.simple(0));
  int e = eng->idx(wy.identity());
  QClass p = eng->quantum_product(s, s);
  REQUIRE(p.size() == 1);
  CHECK(p.begin()->first == std::make_pair(std::vector<int>{1}, e));
  CHECK(p.begin()->second == 1);

  // (sigma_s)^3 = q sigma_s
  QClass acc;
  acc[{eng->zero_degree().a, s}] = 1;
  acc = eng->quantum_product(acc, s);
  acc = eng->quantum_product(acc, s);
  REQUIRE(acc.size() == 1);
  CHECK(acc.begin()->first == std::make_pair(std::vector<int>{1}, s));
  CHECK(acc.begin()->second == 1);
}

TEST_CASE("QH*(Fl3) matches the quantum Monk oracle") {
  auto eng = quantum_engine('A', 2, {});
  const Weyl& wy = eng->weyl();
  // map between engine basis elements and permutations via words
  auto to_perm = [&](const WeylElement& w) {
    Perm p = perm_id();
    for (int i : w.word) p = perm_mul(p, transposition(i, i + 1));
    return p;
  };
  int s1 = eng->idx(wy.simple(0));
  for (int u = 0; u < eng->nbasis(); ++u) {
    QClass got = eng->quantum_product(s1, u);
    // oracle expansion
    auto terms = monk_times_s1(to_perm(eng->basis()[u]));
    QClass expect;
    for (const auto& t : terms) {
      int widx = -1;
      for (int w = 0; w < eng->nbasis(); ++w)
        if (to_perm(eng->basis()[w]) == t.w) widx = w;
      REQUIRE(widx >= 0);
      expect[{std::vector<int>{t.qa, t.qb}, widx}] += 1;
    }
    CHECK(got == expect);
  }
}

TEST_CASE("classical Chevalley agrees with the coinvariant ring") {
  for (auto [t, r, ip] : std::vector<std::tuple<char, int, int>>{
           {'D', 4, 0}, {'D', 4, 1}, {'G', 2, 1}, {'G', 2, 0}, {'A', 3, 1}}) {
    auto eng = quantum_engine_maximal(t, r, ip);
    for (int u = 0; u < eng->nbasis(); ++u) {
      // divisor basis element
      int si = -1;
      for (int b = 0; b < eng->nbasis(); ++b)
        if (eng->len(b) == 1) si = b;
      REQUIRE(si >= 0);
      QClass chev = eng->chevalley(0, u);
      QClass classical = eng->classical_product(si, u);
      // compare the q^0 parts
      QClass chev0;
      for (const auto& [k, c] : chev)
        if (std::all_of(k.first.begin(), k.first.end(), [](int x) { return x == 0; }))
          chev0[k] = c;
      CHECK(chev0 == classical);
    }
  }
}

TEST_CASE("Poincare duality pairing is the identity permutation") {
  for (auto [t, r, ip] : std::vector<std::tuple<char, int, int>>{
           {'D', 4, 0}, {'D', 4, 1}, {'G', 2, 1}, {'A', 3, 0}}) {
    auto eng = quantum_engine_maximal(t, r, ip);
    for (int u = 0; u < eng->nbasis(); ++u)
      for (int v = 0; v < eng->nbasis(); ++v) {
        if (eng->len(u) + eng->len(v) != eng->dim_gp()) continue;
        Rat val = eng->classical_invariant(u, v, eng->idx(eng->weyl().identity()));
        CHECK(val == (v == eng->dual_index(u) ? 1 : 0));
      }
  }
}

TEST_CASE("paper anchor values on the D4/P1 quadric") {
  auto eng = quantum_engine_maximal('D', 4, 0);
  const Weyl& wy = eng->weyl();
  auto top = word1(wy, {1, 2, 3, 4, 2, 1});

  SECTION("classical triples (cell-dimension labels)") {
    CHECK(eng->gw_paper({top, word1(wy, {3, 2, 1}), word1(wy, {4, 2, 1})},
                        eng->zero_degree()) == 1);
    CHECK(eng->gw_paper({top, word1(wy, {4, 2, 1}), word1(wy, {4, 2, 1})},
                        eng->zero_degree()) == 0);
    CHECK(eng->gw_paper({top, word1(wy, {2, 1}), word1(wy, {3, 4, 2, 1})},
                        eng->zero_degree()) == 1);
  }
  SECTION("degree-one invariants") {
    CHECK(eng->gw_paper({top, word1(wy, {2, 1}), word1(wy, {4, 2, 1}), wy.simple(0)},
                        deg1(*eng, 1)) == 1);
  }
  SECTION("the worked deformed invariant equals 1") {
    std::vector<WeylElement> us{wy.simple(0), word1(wy, {2, 1}), word1(wy, {4, 2, 1})};
    CHECK(eng->excess(us, deg1(*eng, 1)) == 0);
    CHECK(eng->gw_paper(us, deg1(*eng, 1)) == 1);
    CHECK(eng->deformed_invariant(us, deg1(*eng, 1)) == 1);
    // the filtration form of Levi-movability agrees
    CHECK(eng->movability_filtration_form(us, deg1(*eng, 1)));
  }
}

TEST_CASE("the two other worked deformed invariants equal 1") {
  {
    auto eng = quantum_engine_maximal('D', 4, 1);
    const Weyl& wy = eng->weyl();
    std::vector<WeylElement> us{wy.simple(1), word1(wy, {3, 1, 2}), word1(wy, {4, 3, 1, 2})};
    DegreeVector d = eng->zero_degree();
    d.a[0] = 2;
    CHECK(eng->excess(us, d) == 0);
    CHECK(eng->deformed_invariant(us, d) == 1);
    CHECK(eng->movability_filtration_form(us, d));
  }
  {
    auto eng = quantum_engine_maximal('G', 2, 1);
    const Weyl& wy = eng->weyl();
    std::vector<WeylElement> us{word1(wy, {1, 2, 1, 2}), word1(wy, {1, 2}), wy.simple(1)};
    CHECK(eng->deformed_invariant(us, deg1(*eng, 1)) == 1);
    CHECK(eng->movability_filtration_form(us, deg1(*eng, 1)));
  }
}

TEST_CASE("commutativity and associativity") {
  auto g2 = quantum_engine_maximal('G', 2, 1);
  const int n = g2->nbasis();
  // commutativity on all pairs
  for (int u = 0; u < n; ++u)
    for (int v = u; v < n; ++v) CHECK(g2->quantum_product(u, v) == g2->quantum_product(v, u));
  // associativity on all triples
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w) {
        QClass a;
        a[{g2->zero_degree().a, u}] = 1;
        QClass lhs = g2->quantum_product(g2->quantum_product(a, v), w);
        QClass b;
        b[{g2->zero_degree().a, v}] = 1;
        QClass vw = g2->quantum_product(b, w);
        QClass rhs;
        for (const auto& [key, c] : vw) {
          DegreeVector dv;
          dv.a = key.first;
          QClass part = g2->quantum_product(u, key.second);
          for (const auto& [k2, c2] : part) {
            DegreeVector sum;
            sum.a = k2.first;
            for (std::size_t q = 0; q < sum.a.size(); ++q) sum.a[q] += dv.a[q];
            rhs[{sum.a, k2.second}] += c * c2;
          }
        }
        for (auto it = rhs.begin(); it != rhs.end();) {
          if (it->second == 0)
            it = rhs.erase(it);
          else
            ++it;
        }
        CHECK(lhs == rhs);
      }

  // random sample on D4/P2 (the largest space used by the acceptance run)
  auto d4 = quantum_engine_maximal('D', 4, 1);
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<int> pick(0, d4->nbasis() - 1);
  for (int trial = 0; trial < 25; ++trial) {
    int u = pick(rng), v = pick(rng);
    CHECK(d4->quantum_product(u, v) == d4->quantum_product(v, u));
  }
}

TEST_CASE("every product term satisfies the grading") {
  auto eng = quantum_engine_maximal('D', 4, 0);
  for (int u = 0; u < eng->nbasis(); ++u)
    for (int v = u; v < eng->nbasis(); ++v) {
      QClass p = eng->quantum_product(u, v);
      for (const auto& [key, c] : p) {
        DegreeVector d;
        d.a = key.first;
        CHECK(eng->len(u) + eng->len(v) ==
              eng->len(key.second) + eng->c1_integral(d));
      }
    }
}

TEST_CASE("curve degrees and c1 integrals") {
  auto eng = quantum_engine_maximal('D', 4, 0);
  const RootSystemData& rs = eng->rs();
  // theta has omega_P(theta^vee) = 1 in D4/P1
  DegreeVector dth = eng->curve_degree(rs.theta);
  CHECK(dth.a == std::vector<int>{1});
  CHECK(eng->c1_integral(dth) == 6);
  // rejection for Levi roots
  CHECK_THROWS_AS(eng->curve_degree(rs.simple_root(1)), std::invalid_argument);

  auto a1 = quantum_engine('A', 1, {});
  DegreeVector d = a1->curve_degree(a1->rs().simple_root(0));
  CHECK(d.a == std::vector<int>{1});
  CHECK(a1->c1_integral(d) == 2);

  // int c1 >= 2 over every T-fixed curve class
  for (auto [t, r, ip] : std::vector<std::tuple<char, int, int>>{{'D', 4, 1}, {'G', 2, 0}}) {
    auto e2 = quantum_engine_maximal(t, r, ip);
    for (const Root& alpha : e2->parabolic().complement_positive_roots)
      CHECK(e2->c1_integral(e2->curve_degree(alpha)) >= 2);
  }
}
