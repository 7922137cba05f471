#include <catch2/catch_amalgamated.hpp>

#include "multcone/root_system.hpp"
#include "multcone/weyl.hpp"

using namespace multcone;

namespace {

WeylElement word1(const Weyl& wy, std::initializer_list<int> letters_1based) {
  std::vector<int> w;
  for (int i : letters_1based) w.push_back(i - 1);
  return wy.from_word(w);
}

}  // namespace

TEST_CASE("highest roots and dual Coxeter numbers") {
  auto d4 = build_root_system('D', 4);
  CHECK(d4.theta == Root{1, 2, 1, 1});
  CHECK(d4.dual_coxeter == 6);
  CHECK(d4.positive_roots.size() == 12);

  auto g2 = build_root_system('G', 2);
  CHECK(g2.theta == Root{3, 2});
  CHECK(g2.dual_coxeter == 4);
  CHECK(g2.positive_roots.size() == 6);

  auto a1 = build_root_system('A', 1);
  CHECK(a1.positive_roots.size() == 1);
  CHECK(a1.dual_coxeter == 2);

  CHECK(build_root_system('F', 4).dual_coxeter == 9);
  CHECK(build_root_system('B', 3).dual_coxeter == 5);
  CHECK(build_root_system('C', 3).dual_coxeter == 4);
  CHECK(build_root_system('E', 6).dual_coxeter == 12);

  CHECK_THROWS_AS(build_root_system('D', 3), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system('H', 4), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system('A', 9), std::invalid_argument);
}

TEST_CASE("root lengths take the expected values") {
  for (auto [t, r] : std::vector<std::pair<char, int>>{{'B', 3}, {'C', 3}, {'F', 4}}) {
    auto rs = build_root_system(t, r);
    for (const Root& b : rs.positive_roots) {
      Rat n2 = rs.root_norm2(b);
      CHECK((n2 == 2 || n2 == 1));
    }
  }
  auto g2 = build_root_system('G', 2);
  for (const Root& b : g2.positive_roots) {
    Rat n2 = g2.root_norm2(b);
    CHECK((n2 == 2 || n2 == Rat(2, 3)));
  }
}

TEST_CASE("s_theta is the reflection in the highest root") {
  auto d4 = build_root_system('D', 4);
  Weyl wy(d4);
  auto st = wy.s_theta();
  CHECK(st == word1(wy, {2, 1, 3, 4, 2, 4, 3, 1, 2}));
  CHECK(st.length() == 2 * (d4.dual_coxeter - 1) - 1);

  auto g2 = build_root_system('G', 2);
  Weyl wg(g2);
  auto stg = wg.s_theta();
  CHECK(stg == word1(wg, {2, 1, 2, 1, 2}));
  CHECK(stg.length() == 5);

  auto a1 = build_root_system('A', 1);
  Weyl wa(a1);
  CHECK(wa.s_theta() == wa.simple(0));
}

TEST_CASE("canonical words are reduced and lex-least reduced") {
  auto g2 = build_root_system('G', 2);
  Weyl wy(g2);
  auto w0 = wy.longest_element();
  CHECK(w0.length() == 6);
  // both reduced words exist; the canonical one starts with s1
  CHECK(w0.word[0] == 0);
  CHECK(wy.multiply(w0, w0) == wy.identity());
}

TEST_CASE("Bruhat covers") {
  auto d4 = build_root_system('D', 4);
  Weyl wy(d4);
  SECTION("covers of the identity are the simple reflections") {
    auto cov = wy.bruhat_covers_up(wy.identity());
    CHECK(cov.size() == 4);
    for (auto& [beta, w] : cov) CHECK(d4.height(beta) == 1);
  }
  SECTION("s1 is covered by s2 s1 via alpha2") {
    auto cov = wy.bruhat_covers_up(wy.simple(0));
    bool found = false;
    for (auto& [beta, w] : cov)
      if (beta == Root{0, 1, 0, 0} && w == word1(wy, {2, 1})) found = true;
    CHECK(found);
  }
  SECTION("the longest element covers nothing upward") {
    CHECK(wy.bruhat_covers_up(wy.longest_element()).empty());
  }
}

TEST_CASE("minimal coset representatives and W^P enumeration") {
  auto d4 = build_root_system('D', 4);
  Weyl wy(d4);
  auto P1 = maximal_parabolic(wy, 0);
  auto P2 = maximal_parabolic(wy, 1);
  CHECK(P1.wp_reps.size() == 8);
  CHECK(P2.wp_reps.size() == 24);

  // Betti numbers of the 6-dim quadric D4/P1: 1,1,1,2,1,1,1
  std::map<int, int> by_len;
  for (auto& w : P1.wp_reps) by_len[w.length()]++;
  CHECK(by_len == std::map<int, int>{{0, 1}, {1, 1}, {2, 1}, {3, 2}, {4, 1}, {5, 1}, {6, 1}});

  auto wbar = minimal_rep(wy, wy.multiply(wy.s_theta(), wy.simple(0)), P1);
  CHECK(wbar == word1(wy, {1, 2, 3, 4, 2, 1}));
  CHECK(wbar == minimal_rep(wy, wy.longest_element(), P1));

  CHECK(minimal_rep(wy, wy.identity(), P1) == wy.identity());
  // u in W^P: minimal_rep(u v) = u for v in W_P
  auto u = word1(wy, {2, 1});
  REQUIRE(in_WP(wy, u, P1));
  auto v = word1(wy, {3, 2, 4});  // inside W_{P1}? letters 3,2,4 include 2: yes Levi {2,3,4}
  CHECK(minimal_rep(wy, wy.multiply(u, v), P1) == u);

  auto g2 = build_root_system('G', 2);
  Weyl wg(g2);
  auto Q2 = maximal_parabolic(wg, 1);
  CHECK(Q2.wp_reps.size() == 6);
}

TEST_CASE("theta shift cases") {
  auto d4 = build_root_system('D', 4);
  Weyl wy(d4);
  auto P1 = maximal_parabolic(wy, 0);

  auto sh_e = theta_shift(wy, P1, wy.identity());
  CHECK(sh_e.c == ThetaCase::Up);
  CHECK(sh_e.alpha == d4.theta);
  CHECK(sh_e.u_prime == minimal_rep(wy, wy.s_theta(), P1));

  auto sh_s1 = theta_shift(wy, P1, wy.simple(0));
  CHECK(sh_s1.c == ThetaCase::Up);
  CHECK(sh_s1.u_prime == word1(wy, {1, 2, 3, 4, 2, 1}));
  // length relation of the Up case: l(u') - l(u) + 1 = int_{d(alpha)} c1
  QVec chi_e = chi_e_weight(d4, P1);
  Rat c1 = d4.weight_pair_coroot(chi_e, sh_s1.alpha);
  CHECK(Rat(sh_s1.u_prime.length() - 1 + 1) == c1);

  auto sh_top = theta_shift(wy, P1, word1(wy, {2, 1}));
  CHECK(sh_top.c == ThetaCase::Same);

  auto g2 = build_root_system('G', 2);
  Weyl wg(g2);
  auto Q2 = maximal_parabolic(wg, 1);
  auto sh = theta_shift(wg, Q2, word1(wg, {1, 2}));
  CHECK(sh.c == ThetaCase::Up);
  CHECK(sh.u_prime.length() > 2);
}

TEST_CASE("chi restrictions in D4/P1") {
  auto d4 = build_root_system('D', 4);
  Weyl wy(d4);
  auto P1 = maximal_parabolic(wy, 0);

  auto restr = [&](const WeylElement& w) {
    return restrict_to_levi(d4, P1, chi_weight(wy, P1, w));
  };
  auto r1 = restr(wy.simple(0));
  CHECK(r1[1] == 1);
  CHECK(r1[2] == 0);
  CHECK(r1[3] == 0);
  auto r21 = restr(word1(wy, {2, 1}));
  CHECK(r21[1] == 0);
  CHECK(r21[2] == 1);
  CHECK(r21[3] == 1);
  auto r421 = restr(word1(wy, {4, 2, 1}));
  CHECK(r421[1] == 0);
  CHECK(r421[2] == 2);
  CHECK(r421[3] == 0);
  // chi_e restricts to 0
  auto re = restrict_to_levi(d4, P1, chi_e_weight(d4, P1));
  for (auto& [j, v] : re) CHECK(v == 0);
}

TEST_CASE("BC identity holds exhaustively for ranks <= 4") {
  std::vector<std::pair<char, int>> cases = {{'A', 1}, {'A', 2}, {'A', 3}, {'A', 4},
                                             {'B', 2}, {'B', 3}, {'B', 4}, {'C', 3},
                                             {'C', 4}, {'D', 4}, {'F', 4}, {'G', 2}};
  for (auto [t, r] : cases) {
    auto rs = build_root_system(t, r);
    for (const Root& alpha : rs.positive_roots) {
      for (int y = 0; y < rs.rank; ++y) {
        QVec xy = qvec(rs.rank);
        xy[y] = 1;
        Rat lhs = 0;
        for (const Root& gamma : rs.positive_roots)
          lhs += rs.weight_pair_coroot(rs.alpha_to_weight(gamma), alpha) *
                 rs.root_pair_coweight(gamma, xy);
        Rat rhs = Rat(2 * rs.dual_coxeter) * rs.root_pair_coweight(alpha, xy) /
                  rs.root_norm2(alpha);
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("length formula in the equality case of the degree bound") {
  // whenever l(min rep of w s_alpha) = l(w) + 1 - int_{d(alpha)} c1 or the
  // covering equality holds, check Lemma `equivalent` via w alpha = theta
  for (auto [t, r] : std::vector<std::pair<char, int>>{{'D', 4}, {'G', 2}}) {
    auto rs = build_root_system(t, r);
    Weyl wy(rs);
    for (int ip = 0; ip < rs.rank; ++ip) {
      auto P = maximal_parabolic(wy, ip);
      QVec chie = chi_e_weight(rs, P);
      QVec two_rho = scaled(rs.rho_weight(), Rat(2));
      for (const auto& w : P.wp_reps) {
        for (const Root& alpha : P.complement_positive_roots) {
          if (wy.act_root(w, alpha) != rs.theta) continue;
          // Lemma old8-7: l(min(w s_alpha)) - l(w) + 1 = (sum_{R+\RL+} gamma)(alpha^vee)
          auto ws = wy.multiply(w, wy.reflection(alpha));
          auto v = minimal_rep(wy, ws, P);
          Rat rhs = rs.weight_pair_coroot(chie, alpha);
          CHECK(Rat(v.length() - w.length() + 1) == rhs);
          // Lemma equivalent: l(w s_alpha) = l(w) - 1 + (sum_{R+} gamma)(alpha^vee)
          Rat rhs2 = rs.weight_pair_coroot(two_rho, alpha);
          CHECK(Rat(ws.length()) == Rat(w.length()) - 1 + rhs2);
        }
      }
    }
  }
}

TEST_CASE("levi alcove reduction and mu") {
  auto d4 = build_root_system('D', 4);
  Weyl wy(d4);
  auto P1 = maximal_parabolic(wy, 0);
  QVec a1v = d4.coroot_fcw(d4.simple_root(0));
  QVec mu_minus = levi_alcove_reduce(d4, P1, scaled(a1v, Rat(-1)));
  CHECK(mu_minus == scaled(a1v, Rat(-1)));  // -alpha_1^vee already reduced
  // idempotent
  CHECK(levi_alcove_reduce(d4, P1, mu_minus) == mu_minus);
  // omega_P value
  CHECK(d4.weight_pair_coweight(d4.fundamental_weight(0), mu_minus) == -1);

  auto g2 = build_root_system('G', 2);
  Weyl wg(g2);
  auto Q2 = maximal_parabolic(wg, 1);
  QVec a2v = g2.coroot_fcw(g2.simple_root(1));
  QVec mu = levi_alcove_reduce(g2, Q2, scaled(a2v, Rat(-1)));
  CHECK(mu == scaled(a2v, Rat(-1)));
  CHECK(g2.weight_pair_coweight(g2.fundamental_weight(1), mu) == -1);
}

TEST_CASE("component classification") {
  auto d4 = build_root_system('D', 4);
  Weyl wy(d4);
  auto P1 = maximal_parabolic(wy, 0);
  REQUIRE(P1.components.size() == 1);
  CHECK(P1.components[0].ctype.type_label == 'A');
  CHECK(P1.components[0].ctype.rank == 3);
  CHECK(P1.components[0].dual_coxeter_k == 4);
  CHECK(P1.w0_L.length() == 6);

  auto P2 = maximal_parabolic(wy, 1);
  REQUIRE(P2.components.size() == 3);
  for (auto& c : P2.components) {
    CHECK(c.ctype.type_label == 'A');
    CHECK(c.ctype.rank == 1);
    CHECK(c.dual_coxeter_k == 2);
  }

  auto b3 = build_root_system('B', 3);
  Weyl wb(b3);
  auto Q = maximal_parabolic(wb, 0);  // Levi on {2,3}: B2
  REQUIRE(Q.components.size() == 1);
  CHECK(Q.components[0].ctype.type_label == 'B');
}
