#pragma once
// Independent reference computations for the test suites. Nothing here may
// call into the normal-form or homology code it is used to check.

#include "kclass/int_matrix.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using kclass::Integer;
using kclass::IntMatrix;
using kclass::IntVector;
using kclass::operator+;
using kclass::operator-;

// Leibniz expansion; fine for the <= 5x5 minors the tests take.
inline Integer leibniz_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Integer total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Integer term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask[i]) idx.push_back(i);
    fn(idx);
  } while (std::prev_permutation(mask.begin(), mask.end()));
}

/// gcd of all k x k minors.
inline Integer minor_gcd(const IntMatrix& m, std::size_t k) {
  Integer g = 0;
  for_each_subset(m.rows(), k, [&](const std::vector<std::size_t>& rows) {
    for_each_subset(m.cols(), k, [&](const std::vector<std::size_t>& cols) {
      g = gcd(g, leibniz_det(m.select(rows, cols)));
    });
  });
  return g;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long lo,
                               long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps = 12) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) {
    if (n == 1 && rng() % 2) u(0, 0) = -1;
    return u;
  }
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<long> mult(-2, 2);
  for (int s = 0; s < steps; ++s) {
    std::size_t a = pick(rng), b = pick(rng);
    if (a == b) continue;
    switch (rng() % 3) {
      case 0: u.add_row_multiple(a, b, mult(rng)); break;
      case 1: u.swap_rows(a, b); break;
      default: u.negate_row(a); break;
    }
  }
  return u;
}

/// |B / mB| for B = Z/n by enumerating the subgroup m(Z/n).
inline long quotient_order_cyclic(long n, long m) {
  std::vector<bool> hit(static_cast<std::size_t>(n), false);
  long size = 0;
  for (long x = 0; x < n; ++x) {
    const long y = (m * x) % n;
    if (!hit[static_cast<std::size_t>(y)]) {
      hit[static_cast<std::size_t>(y)] = true;
      ++size;
    }
  }
  return n / size;
}

/// Brute-force search for x in a small box with f(x) = target.
/// `orders` gives 0 for free coordinates (searched in [-radius, radius]) and
/// d for torsion coordinates (searched in [0, d)).
inline std::optional<IntVector> search_preimage(const IntMatrix& f, const IntVector& orders,
                                                const IntVector& target_orders,
                                                const IntVector& target, long radius) {
  const std::size_t n = orders.size();
  std::vector<long> lo(n), hi(n), cur(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (orders[i] == 0) {
      lo[i] = -radius;
      hi[i] = radius;
    } else {
      lo[i] = 0;
      hi[i] = orders[i].get_si() - 1;
    }
    cur[i] = lo[i];
  }
  auto matches = [&](const IntVector& x) {
    const IntVector y = f * x;
    for (std::size_t i = 0; i < y.size(); ++i) {
      Integer diff = y[i] - target[i];
      if (target_orders[i] == 0 ? diff != 0 : diff % target_orders[i] != 0) return false;
    }
    return true;
  };
  for (;;) {
    IntVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = cur[i];
    if (matches(x)) return x;
    std::size_t i = 0;
    while (i < n && cur[i] == hi[i]) {
      cur[i] = lo[i];
      ++i;
    }
    if (i == n) return std::nullopt;
    ++cur[i];
  }
}

/// Extension class of 0 -> B -i-> G -p-> Z/m -> 0 from a set-theoretic
/// section s(a) and its factor set f(a, a') = s(a) + s(a') - s(a + a'): for a
/// cyclic quotient the class is sum_j f(j, 1) in B / mB. Returned as a raw
/// element of B (unreduced). `twist` pre-composes the quotient with
/// a |-> twist * a, which computes the class of the pulled-back extension.
inline IntVector factor_set_class(const IntMatrix& i, const IntVector& b_orders,
                                  const IntMatrix& p, const IntVector& g_orders, long m,
                                  long twist = 1, long radius = 12) {
  const IntVector a_orders{Integer(m)};
  std::vector<IntVector> section;
  for (long a = 0; a < m; ++a) {
    auto s = search_preimage(p, g_orders, a_orders, IntVector{Integer(a)}, radius);
    if (!s) throw std::runtime_error("factor_set_class: no preimage in search box");
    section.push_back(*s);
  }
  auto s_of = [&](long a) { return section[static_cast<std::size_t>(((a % m) + m) % m)]; };
  IntVector total(b_orders.size(), Integer(0));
  for (long j = 0; j < m; ++j) {
    const IntVector f = s_of(twist * j) + s_of(twist) - s_of(twist * (j + 1));
    auto b = search_preimage(i, b_orders, g_orders, f, radius);
    if (!b) throw std::runtime_error("factor_set_class: cocycle value outside image");
    total = total + *b;
  }
  return total;
}

inline bool is_square_long(long n) {
  long r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n;
}

/// Real number (a + b sqrt d) / c as an exact pair x + y sqrt d of rationals.
struct Surd {
  mpq_class x, y;
};

inline Surd make_surd(const Integer& a, const Integer& b, const Integer& c) {
  Surd s{mpq_class(a, c), mpq_class(b, c)};
  s.x.canonicalize();
  s.y.canonicalize();
  return s;
}

/// Brute force over integral Mobius maps: is there [[p,q],[r,s]] with
/// |entries| <= limit, det = +-1 and beta = (p alpha + q) / (r alpha + s)?
/// Both numbers are given over the same radicand d (otherwise no map exists).
/// For each (r, s) the pair (p, q) is forced by comparing sqrt(d)-parts.
inline bool mobius_bruteforce(const Surd& alpha, const Surd& beta, const Integer& d, long limit) {
  for (long r = -limit; r <= limit; ++r)
    for (long s = -limit; s <= limit; ++s) {
      // beta (r alpha + s) = p alpha + q
      const mpq_class den_x = r * alpha.x + s, den_y = r * alpha.y;
      if (den_x == 0 && den_y == 0) continue;
      const mpq_class rhs_x = beta.x * den_x + beta.y * den_y * d;
      const mpq_class rhs_y = beta.x * den_y + beta.y * den_x;
      mpq_class p = rhs_y / alpha.y;
      mpq_class q = rhs_x - p * alpha.x;
      p.canonicalize();
      q.canonicalize();
      if (p.get_den() != 1 || q.get_den() != 1) continue;
      if (abs(p) > limit || abs(q) > limit) continue;
      const mpz_class det = p.get_num() * s - q.get_num() * r;
      if (det == 1 || det == -1) return true;
    }
  return false;
}

/// First `count` partial quotients of (a + b sqrt d) / c by floating point
/// iteration at high precision.
inline std::vector<long> cf_by_float(const Integer& a, const Integer& b, const Integer& d,
                                     const Integer& c, std::size_t count) {
  const unsigned bits = 2048;
  mpf_class x(0, bits), root(0, bits);
  mpf_class dd(d, bits);
  mpf_sqrt(root.get_mpf_t(), dd.get_mpf_t());
  x = (mpf_class(a, bits) + mpf_class(b, bits) * root) / mpf_class(c, bits);
  std::vector<long> out;
  for (std::size_t i = 0; i < count; ++i) {
    mpf_class f(0, bits);
    mpf_floor(f.get_mpf_t(), x.get_mpf_t());
    out.push_back(f.get_si());
    x = 1 / (x - f);
  }
  return out;
}

/// Finite abelian group as a product of cyclic factors, elements as residue tuples.
using Residues = std::vector<long>;
using SmallMatrix = std::vector<std::vector<long>>;  // rows = codomain factors

inline std::vector<Residues> all_elements(const Residues& orders) {
  std::vector<Residues> out{Residues(orders.size(), 0)};
  for (std::size_t i = 0; i < orders.size(); ++i) {
    std::vector<Residues> next;
    for (const auto& x : out)
      for (long v = 0; v < orders[i]; ++v) {
        Residues y = x;
        y[i] = v;
        next.push_back(std::move(y));
      }
    out = std::move(next);
  }
  return out;
}

inline Residues small_apply(const SmallMatrix& m, const Residues& x, const Residues& cod) {
  Residues y(cod.size(), 0);
  for (std::size_t i = 0; i < cod.size(); ++i) {
    long acc = 0;
    for (std::size_t j = 0; j < x.size(); ++j) acc += m[i][j] * x[j];
    y[i] = ((acc % cod[i]) + cod[i]) % cod[i];
  }
  return y;
}

/// Every homomorphism dom -> cod, as the images of the cyclic generators.
inline std::vector<SmallMatrix> all_homs(const Residues& dom, const Residues& cod) {
  std::vector<Residues> targets = all_elements(cod);
  std::vector<std::vector<Residues>> allowed(dom.size());
  for (std::size_t j = 0; j < dom.size(); ++j)
    for (const auto& y : targets) {
      bool ok = true;
      for (std::size_t i = 0; i < cod.size(); ++i) ok = ok && (dom[j] * y[i]) % cod[i] == 0;
      if (ok) allowed[j].push_back(y);
    }
  std::vector<SmallMatrix> out{SmallMatrix(cod.size(), std::vector<long>(dom.size(), 0))};
  for (std::size_t j = 0; j < dom.size(); ++j) {
    std::vector<SmallMatrix> next;
    for (const auto& m : out)
      for (const auto& y : allowed[j]) {
        SmallMatrix n = m;
        for (std::size_t i = 0; i < cod.size(); ++i) n[i][j] = y[i];
        next.push_back(std::move(n));
      }
    out = std::move(next);
  }
  return out;
}

inline bool small_bijective(const SmallMatrix& m, const Residues& dom, const Residues& cod) {
  std::vector<Residues> images;
  for (const auto& x : all_elements(dom)) images.push_back(small_apply(m, x, cod));
  std::sort(images.begin(), images.end());
  return std::adjacent_find(images.begin(), images.end()) == images.end() &&
         images.size() == all_elements(cod).size();
}

inline std::vector<SmallMatrix> all_automorphisms(const Residues& g) {
  std::vector<SmallMatrix> out;
  for (auto& m : all_homs(g, g))
    if (small_bijective(m, g, g)) out.push_back(std::move(m));
  return out;
}

/// Do g o f and k o h agree on every element of dom?
inline bool squares_commute(const SmallMatrix& f, const Residues& f_cod, const SmallMatrix& g,
                            const SmallMatrix& h, const Residues& h_cod, const SmallMatrix& k,
                            const Residues& dom, const Residues& cod) {
  for (const auto& x : all_elements(dom))
    if (small_apply(g, small_apply(f, x, f_cod), cod) != small_apply(k, small_apply(h, x, h_cod), cod))
      return false;
  return true;
}

/// Finite six-term sequence: orders of the six groups, maps[k] : k -> k+1.
struct SmallSixTerm {
  std::array<Residues, 6> groups;
  std::array<SmallMatrix, 6> maps;
};

/// Exhaustive search for an isomorphism of finite six-term sequences.
inline bool small_sixterm_isomorphic(const SmallSixTerm& s, const SmallSixTerm& t) {
  for (std::size_t k = 0; k < 6; ++k)
    if (all_elements(s.groups[k]).size() != all_elements(t.groups[k]).size()) return false;
  std::array<std::vector<SmallMatrix>, 6> auts;
  for (std::size_t k : {0u, 2u, 3u, 5u}) auts[k] = all_automorphisms(s.groups[k]);
  // isos s.groups[k] -> t.groups[k] when the canonical forms agree
  for (std::size_t k = 0; k < 6; ++k)
    if (s.groups[k] != t.groups[k]) return false;

  // does a middle map exist for ends (b, a) at row r?
  auto middle_exists = [&](std::size_t r, const SmallMatrix& b, const SmallMatrix& a) {
    const std::size_t mid = r + 1, end = r + 2;
    for (const auto& eta : all_homs(s.groups[mid], t.groups[mid])) {
      if (!squares_commute(s.maps[r], s.groups[mid], eta, b, t.groups[r], t.maps[r], s.groups[r],
                           t.groups[mid]))
        continue;
      if (!squares_commute(s.maps[mid], s.groups[end], a, eta, t.groups[mid], t.maps[mid],
                           s.groups[mid], t.groups[end]))
        continue;
      return true;
    }
    return false;
  };
  std::vector<std::pair<std::size_t, std::size_t>> row0, row1;
  for (std::size_t i = 0; i < auts[0].size(); ++i)
    for (std::size_t j = 0; j < auts[2].size(); ++j)
      if (middle_exists(0, auts[0][i], auts[2][j])) row0.emplace_back(i, j);
  for (std::size_t i = 0; i < auts[3].size(); ++i)
    for (std::size_t j = 0; j < auts[5].size(); ++j)
      if (middle_exists(3, auts[3][i], auts[5][j])) row1.emplace_back(i, j);
  for (const auto& [b0, a0] : row0)
    for (const auto& [b1, a1] : row1) {
      // exponential: K0A -> K1B, index: K1A -> K0B
      if (!squares_commute(s.maps[2], s.groups[3], auts[3][b1], auts[2][a0], t.groups[2], t.maps[2],
                           s.groups[2], t.groups[3]))
        continue;
      if (!squares_commute(s.maps[5], s.groups[0], auts[0][b0], auts[5][a1], t.groups[5], t.maps[5],
                           s.groups[5], t.groups[0]))
        continue;
      return true;
    }
  return false;
}

}  // namespace oracle
