// Temporary convention probe (not a registered test).
#include <iostream>

#include "multcone/coinvariant.hpp"

using namespace multcone;

int main() {
  auto a2 = build_root_system('A', 2);
  Weyl wy(a2);
  CoinvariantRing ring(wy);
  auto w0 = wy.longest_element();
  std::cout << "A2 duality table: integral(S_u S_v) for complementary lengths\n";
  std::vector<WeylElement> all;
  // enumerate W via parabolic with empty levi
  auto B = make_parabolic(wy, {});
  for (auto& u : B.wp_reps) all.push_back(u);
  for (auto& u : all)
    for (auto& v : all) {
      if (u.length() + v.length() != w0.length()) continue;
      Rat val = ring.integral(poly_mul(ring.schubert(u), ring.schubert(v)));
      std::cout << "  <" << wy.word_string(u) << " , " << wy.word_string(v)
                << "> = " << val.get_str();
      auto w0u = wy.multiply(w0, u);
      auto uw0 = wy.multiply(u, w0);
      std::cout << "   [w0*u=" << wy.word_string(w0u) << ", u*w0=" << wy.word_string(uw0)
                << "]\n";
    }
  std::cout << "\nChevalley probe: S_{s1} * S_w expansions\n";
  for (auto& w : all) {
    if (w.length() > 2) continue;
    Poly prod = poly_mul(ring.schubert(wy.simple(0)), ring.schubert(w));
    std::cout << "  S_s1 * S_{" << wy.word_string(w) << "} = ";
    for (auto& x : all) {
      if (x.length() != w.length() + 1) continue;
      // coefficient of S_x: pair against the duality partner found above
      for (auto& y : all) {
        if (y.length() + x.length() != w0.length()) continue;
        Rat pair = ring.integral(poly_mul(ring.schubert(x), ring.schubert(y)));
        if (pair == 1) {
          Rat c = ring.integral(poly_mul(prod, ring.schubert(y)));
          if (c != 0) std::cout << c.get_str() << "*S_{" << wy.word_string(x) << "} ";
        }
      }
    }
    std::cout << "\n";
  }
  std::cout << "\nexpect from right-root Chevalley: S_s1*S_s1 = S_{s2s1};"
            << " S_s1*S_{s1s2} = S_{w0}; S_s1*S_{s2} = S_{s1s2}+S_{s2s1}\n";
  return 0;
}
