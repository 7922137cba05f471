// Exact root-system combinatorics for the simple types A..G, rank <= 8.
//
// Conventions used everywhere in this library:
//  * cartan[i][j] = alpha_j(alpha_i^vee); row i is the coroot alpha_i^vee.
//  * roots are integer vectors in simple-root coordinates,
//  * weights are rational vectors in fundamental-weight coordinates
//    (coeff b is lambda(alpha_b^vee)),
//  * coweights are rational vectors in fundamental-coweight coordinates
//    (coeff j is alpha_j(mu), with alpha_i(x_j) = delta_ij),
//  * the invariant form (.,.) is normalized so (theta, theta) = 2.
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "multcone/rational.hpp"

namespace multcone {

using Root = std::vector<int>;  // simple-root coordinates

struct RootSystemData {
  char type_label = '?';
  int rank = 0;
  std::vector<std::vector<int>> cartan;  // cartan[i][j] = alpha_j(alpha_i^vee)
  std::vector<Rat> dsym;                 // dsym[i] = (alpha_i, alpha_i)/2
  std::vector<Root> positive_roots;      // sorted by (height, lex)
  std::map<Root, int> root_index;
  Root theta;        // highest root
  QVec rho_alpha;    // rho in simple-root coordinates
  int dual_coxeter;  // g* = rho(theta^vee) + 1
  QMat cartan_q;     // cartan as rationals
  QMat cartan_inv;   // inverse of cartan_q
  QMat cartan_inv_t; // inverse transpose

  std::string name() const { return std::string(1, type_label) + std::to_string(rank); }

  int height(const Root& r) const {
    int h = 0;
    for (int c : r) h += c;
    return h;
  }

  // beta(alpha_i^vee) for a root beta in simple-root coordinates
  int root_pair_simple_coroot(const Root& beta, int i) const {
    long v = 0;
    for (int j = 0; j < rank; ++j) v += static_cast<long>(beta[j]) * cartan[i][j];
    return static_cast<int>(v);
  }

  bool is_positive(const Root& r) const {
    for (int c : r)
      if (c < 0) return false;
    return true;
  }

  bool is_root(const Root& r) const {
    if (root_index.count(r)) return true;
    Root neg = r;
    for (auto& c : neg) c = -c;
    return root_index.count(neg) != 0;
  }

  Root simple_root(int i) const {
    Root r(rank, 0);
    r[i] = 1;
    return r;
  }

  // s_i acting on a root
  Root reflect_root(int i, const Root& beta) const {
    Root r = beta;
    r[i] -= root_pair_simple_coroot(beta, i);
    return r;
  }

  // (beta, gamma) under the normalized invariant form
  Rat form_roots(const Root& beta, const Root& gamma) const {
    Rat s = 0;
    for (int i = 0; i < rank; ++i) {
      if (beta[i] == 0) continue;
      for (int j = 0; j < rank; ++j)
        if (gamma[j] != 0) s += Rat(beta[i]) * Rat(gamma[j]) * dsym[i] * Rat(cartan[i][j]);
    }
    return s;
  }

  Rat root_norm2(const Root& beta) const { return form_roots(beta, beta); }

  // coordinates of beta^vee = 2 beta / (beta,beta) in the simple-coroot basis
  QVec coroot_coords(const Root& beta) const {
    const Rat dbeta = root_norm2(beta) / 2;
    QVec c = qvec(rank);
    for (int j = 0; j < rank; ++j) c[j] = Rat(beta[j]) * dsym[j] / dbeta;
    return c;
  }

  // lambda(beta^vee) for a weight lambda in fundamental-weight coordinates
  Rat weight_pair_coroot(const QVec& lambda, const Root& beta) const {
    return dot(lambda, coroot_coords(beta));
  }

  // weight given in fw coordinates -> simple-root coordinates (rational)
  QVec weight_to_alpha(const QVec& lambda) const { return mat_apply(cartan_inv, lambda); }

  // root (alpha coords) -> fw coordinates
  QVec alpha_to_weight(const Root& beta) const {
    QVec m = qvec(rank);
    for (int i = 0; i < rank; ++i) m[i] = root_pair_simple_coroot(beta, i);
    return m;
  }

  // lambda(mu) for weight lambda (fw coords) and coweight mu (fcw coords)
  Rat weight_pair_coweight(const QVec& lambda, const QVec& mu) const {
    return dot(lambda, mat_apply(cartan_inv_t, mu));
  }

  // beta(mu) for root beta and coweight mu (fcw coords)
  Rat root_pair_coweight(const Root& beta, const QVec& mu) const {
    Rat s = 0;
    for (int j = 0; j < rank; ++j) s += Rat(beta[j]) * mu[j];
    return s;
  }

  // coweight in fcw coords -> simple-coroot coordinates
  QVec coweight_to_coroot_coords(const QVec& mu) const { return mat_apply(cartan_inv_t, mu); }

  // fcw coordinates of beta^vee
  QVec coroot_fcw(const Root& beta) const {
    QVec c = coroot_coords(beta);
    QVec n = qvec(rank);
    for (int j = 0; j < rank; ++j)
      for (int k = 0; k < rank; ++k) n[j] += c[k] * Rat(cartan[k][j]);
    return n;
  }

  // s_i acting on a weight (fw coordinates)
  QVec reflect_weight(int i, const QVec& lambda) const {
    QVec r = lambda;
    const Rat c = lambda[i];
    for (int b = 0; b < rank; ++b) r[b] -= c * Rat(cartan[b][i]);
    return r;
  }

  // s_i acting on a coweight (fcw coordinates)
  QVec reflect_coweight(int i, const QVec& mu) const {
    QVec r = mu;
    const Rat c = mu[i];
    for (int j = 0; j < rank; ++j) r[j] -= c * Rat(cartan[i][j]);
    return r;
  }

  QVec rho_weight() const { return QVec(rank, Rat(1)); }

  QVec fundamental_weight(int i) const {
    QVec m = qvec(rank);
    m[i] = 1;
    return m;
  }
};

namespace detail {

inline std::vector<std::pair<int, int>> dynkin_edges(char type, int rank) {
  std::vector<std::pair<int, int>> e;
  auto chain = [&](int from, int to) {
    for (int i = from; i < to; ++i) e.push_back({i, i + 1});
  };
  switch (type) {
    case 'A': case 'B': case 'C': case 'F': case 'G':
      chain(0, rank - 1);
      break;
    case 'D':
      chain(0, rank - 3);
      e.push_back({rank - 3, rank - 2});
      e.push_back({rank - 3, rank - 1});
      break;
    case 'E':
      // Bourbaki: chain 1-3-4-5-6(-7-8), node 2 attached to 4
      e.push_back({0, 2});
      for (int i = 2; i < rank - 1; ++i) e.push_back({i, i + 1});
      e.push_back({1, 3});
      break;
    default:
      throw std::invalid_argument("unknown type");
  }
  return e;
}

}  // namespace detail

inline bool valid_type_rank(char type, int rank) {
  switch (type) {
    case 'A': return rank >= 1 && rank <= 8;
    case 'B': return rank >= 2 && rank <= 8;
    case 'C': return rank >= 2 && rank <= 8;
    case 'D': return rank >= 4 && rank <= 8;
    case 'E': return rank >= 6 && rank <= 8;
    case 'F': return rank == 4;
    case 'G': return rank == 2;
    default: return false;
  }
}

inline RootSystemData build_root_system(char type, int rank) {
  if (!valid_type_rank(type, rank))
    throw std::invalid_argument("invalid simple type/rank: " + std::string(1, type) +
                                std::to_string(rank));
  RootSystemData rs;
  rs.type_label = type;
  rs.rank = rank;

  // squared-length halves, normalized so long roots have (a,a) = 2
  rs.dsym.assign(rank, Rat(1));
  if (type == 'B') rs.dsym[rank - 1] = Rat(1, 2);
  if (type == 'C')
    for (int i = 0; i < rank - 1; ++i) rs.dsym[i] = Rat(1, 2);
  if (type == 'F') {
    rs.dsym[2] = Rat(1, 2);
    rs.dsym[3] = Rat(1, 2);
  }
  if (type == 'G') rs.dsym[0] = Rat(1, 3);

  rs.cartan.assign(rank, std::vector<int>(rank, 0));
  for (int i = 0; i < rank; ++i) rs.cartan[i][i] = 2;
  for (auto [i, j] : detail::dynkin_edges(type, rank)) {
    // (alpha_i, alpha_j) = -max(d_i, d_j) for adjacent simple roots
    const Rat f = -std::max(rs.dsym[i], rs.dsym[j]);
    const Rat aij = f / rs.dsym[i];
    const Rat aji = f / rs.dsym[j];
    assert(aij.get_den() == 1 && aji.get_den() == 1);
    rs.cartan[i][j] = static_cast<int>(aij.get_num().get_si());
    rs.cartan[j][i] = static_cast<int>(aji.get_num().get_si());
  }

  // positive roots by reflection closure
  std::map<Root, bool> seen;
  std::vector<Root> queue;
  for (int i = 0; i < rank; ++i) {
    queue.push_back(rs.simple_root(i));
    seen[queue.back()] = true;
  }
  for (std::size_t k = 0; k < queue.size(); ++k) {
    const Root beta = queue[k];
    for (int i = 0; i < rank; ++i) {
      Root g = rs.reflect_root(i, beta);
      if (!rs.is_positive(g)) continue;
      if (!seen.count(g)) {
        seen[g] = true;
        queue.push_back(g);
      }
    }
  }
  rs.positive_roots = std::move(queue);
  std::sort(rs.positive_roots.begin(), rs.positive_roots.end(),
            [&](const Root& a, const Root& b) {
              const int ha = rs.height(a), hb = rs.height(b);
              if (ha != hb) return ha < hb;
              return a < b;
            });
  for (std::size_t i = 0; i < rs.positive_roots.size(); ++i)
    rs.root_index[rs.positive_roots[i]] = static_cast<int>(i);

  rs.theta = rs.positive_roots.back();
  for (int i = 0; i < rank; ++i)
    if (rs.root_pair_simple_coroot(rs.theta, i) < 0)
      throw std::logic_error("highest root not dominant");
  assert(rs.root_norm2(rs.theta) == 2);

  rs.cartan_q = qmat(rank, rank);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) rs.cartan_q[i][j] = rs.cartan[i][j];
  rs.cartan_inv = mat_inverse(rs.cartan_q);
  rs.cartan_inv_t = mat_transpose(rs.cartan_inv);

  rs.rho_alpha = rs.weight_to_alpha(rs.rho_weight());
  const Rat gs = rs.weight_pair_coroot(rs.rho_weight(), rs.theta) + 1;
  assert(gs.get_den() == 1);
  rs.dual_coxeter = static_cast<int>(gs.get_num().get_si());
  return rs;
}

inline RootSystemData parse_root_system(const std::string& label) {
  if (label.size() < 2) throw std::invalid_argument("bad root-system label: " + label);
  const char type = label[0];
  int rank = 0;
  try {
    rank = std::stoi(label.substr(1));
  } catch (...) {
    throw std::invalid_argument("bad root-system label: " + label);
  }
  return build_root_system(type, rank);
}

// Identify the abstract type of a connected sub-diagram given by `nodes`
// (ambient simple-root indices). Returns the type label, rank, and the map
// standard-index -> ambient-index realizing a Dynkin-diagram isomorphism
// with the standard Bourbaki numbering.
struct ComponentType {
  char type_label;
  int rank;
  std::vector<int> std_to_ambient;  // size rank
};

inline std::optional<std::vector<int>> match_cartan(
    const RootSystemData& rs, const std::vector<int>& nodes,
    const std::vector<std::vector<int>>& target) {
  const int k = static_cast<int>(nodes.size());
  std::vector<int> perm(nodes.begin(), nodes.end());
  std::sort(perm.begin(), perm.end());
  do {
    bool ok = true;
    for (int i = 0; i < k && ok; ++i)
      for (int j = 0; j < k && ok; ++j)
        if (rs.cartan[perm[i]][perm[j]] != target[i][j]) ok = false;
    if (ok) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

inline ComponentType classify_component(const RootSystemData& rs, const std::vector<int>& nodes) {
  const int k = static_cast<int>(nodes.size());
  static const char kTypes[] = {'A', 'B', 'C', 'D', 'E', 'F', 'G'};
  for (char t : kTypes) {
    if (!valid_type_rank(t, k)) continue;
    RootSystemData cand = build_root_system(t, k);
    if (auto perm = match_cartan(rs, nodes, cand.cartan))
      return ComponentType{t, k, *perm};
  }
  throw std::logic_error("sub-diagram is not of a recognized simple type");
}

}  // namespace multcone
