#include "kclass/substitution.hpp"

#include "kclass/error.hpp"
#include "kclass/smith.hpp"

#include <algorithm>
#include <functional>

namespace kclass {

void validate_substitution(const SubstitutionInvariant& inv) {
  const std::size_t m = inv.a.rows();
  if (!inv.a.is_square() || m == 0) throw InvalidInput("A must be a nonempty square matrix");
  if (!inv.a.is_nonnegative()) throw InvalidInput("A must have nonnegative entries");
  if (inv.p.size() != inv.n) throw InvalidInput("p must have n entries");
  for (const Integer& x : inv.p)
    if (x <= 0) throw InvalidInput("p must have positive entries");
  if (!inv.a_tilde.is_square() || inv.a_tilde.rows() != m + inv.n)
    throw InvalidInput("A_tilde must be square of size |A| + n");
  if (inv.a_tilde.block(0, 0, m, m) != inv.a)
    throw InvalidInput("upper left block of A_tilde must equal A");
  if (!inv.a_tilde.block(0, m, m, inv.n).is_zero())
    throw InvalidInput("upper right block of A_tilde must vanish");
}

std::vector<DGElement> q_scale(const SubstitutionInvariant& inv) {
  validate_substitution(inv);
  const std::size_t m = inv.a.rows();
  std::vector<DGElement> out;
  for (std::size_t i = 0; i < inv.n; ++i) out.push_back({0, unit_vector(m + inv.n, m + i)});
  return out;
}

ScaledInvariant scaled_triple(const SubstitutionInvariant& inv) {
  const std::size_t m = inv.a.rows();
  ScaledInvariant out{inv.a, {}};
  for (const DGElement& x : q_scale(inv))
    out.scale.push_back({x.stage, IntVector(x.vector.begin(), x.vector.begin() + static_cast<long>(m))});
  return out;
}

namespace {

DGVerdict verdict(Verdict v, std::string reason) {
  DGVerdict out;
  out.verdict = v;
  out.reason = std::move(reason);
  return out;
}

// Bijection i -> perm[i] with same(i, perm[i]) for every i, if any.
std::optional<std::vector<std::size_t>> match_multisets(
    std::size_t n, const std::function<bool(std::size_t, std::size_t)>& same) {
  std::vector<std::size_t> perm(n);
  std::vector<bool> used(n, false);
  // `same` is an equivalence across the two sides, so greedy matching is exact
  for (std::size_t i = 0; i < n; ++i) {
    bool found = false;
    for (std::size_t j = 0; j < n && !found; ++j)
      if (!used[j] && same(i, j)) {
        used[j] = true;
        perm[i] = j;
        found = true;
      }
    if (!found) return std::nullopt;
  }
  return perm;
}

std::vector<bool> zero_flags(const std::vector<DGElement>& scale,
                             const StationaryDimensionGroup& g) {
  std::vector<bool> out;
  for (const DGElement& x : scale) out.push_back(dg_is_zero(x, g));
  return out;
}

// Stage-0 coordinates of x in a group whose matrix is invertible over Z.
IntVector stage_zero(const DGElement& x, const IntMatrix& inverse) {
  IntVector v = x.vector;
  for (std::size_t k = 0; k < x.stage; ++k) v = inverse * v;
  return v;
}

bool only_primes_of(Integer x, const Integer& lambda) {
  x = abs(x);
  for (Integer g = gcd(x, lambda); g > 1; g = gcd(x, lambda))
    while (x % g == 0) x /= g;
  return x == 1;
}

bool same_prime_support(const Integer& a, const Integer& b) {
  return only_primes_of(a, b) && only_primes_of(b, a);
}

// Positive integer left Perron vector for a primitive matrix of eventual rank 1.
IntVector rank1_functional(const IntMatrix& a, const Integer& lambda) {
  IntMatrix shifted = a - lambda * IntMatrix::identity(a.rows());
  const IntMatrix k = integer_kernel(shifted.transposed());
  IntVector l = k.column(0);
  if (l[0] < 0)
    for (Integer& x : l) x = -x;
  return l;
}

// Value of the normalized state on x: l.v / lambda^stage.
Rational rank1_state(const IntVector& l, const Integer& lambda, const DGElement& x) {
  Integer num = 0;
  for (std::size_t i = 0; i < l.size(); ++i) num += l[i] * x.vector[i];
  Integer den = 1;
  for (std::size_t k = 0; k < x.stage; ++k) den *= lambda;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

DGVerdict compare_rank1(const ScaledInvariant& s1, const ScaledInvariant& s2) {
  Integer lambda1 = 0, lambda2 = 0;
  for (std::size_t i = 0; i < s1.matrix.rows(); ++i) lambda1 += s1.matrix(i, i);
  for (std::size_t i = 0; i < s2.matrix.rows(); ++i) lambda2 += s2.matrix(i, i);
  if (!same_prime_support(lambda1, lambda2))
    return verdict(Verdict::not_isomorphic,
                   "rank-one dimension groups Z[1/" + lambda1.get_str() + "] and Z[1/" +
                       lambda2.get_str() + "] differ");
  // Order isomorphisms are multiplication by positive rationals supported on
  // the primes of lambda; try the ratios that send the first nonzero element home.
  const IntVector f1 = rank1_functional(s1.matrix, lambda1);
  const IntVector f2 = rank1_functional(s2.matrix, lambda2);
  std::vector<Rational> v1, v2;
  for (const DGElement& x : s1.scale) v1.push_back(rank1_state(f1, lambda1, x));
  for (const DGElement& x : s2.scale) v2.push_back(rank1_state(f2, lambda2, x));
  const std::size_t n = v1.size();
  std::vector<Rational> ratios;
  const auto pivot = std::find_if(v1.begin(), v1.end(), [](const Rational& r) { return r != 0; });
  if (pivot == v1.end()) {
    ratios.push_back(1);
  } else {
    for (const Rational& y : v2)
      if (y != 0 && sgn(y) == sgn(*pivot)) {
        Rational r = y / *pivot;
        r.canonicalize();
        if (only_primes_of(r.get_num(), lambda1) && only_primes_of(r.get_den(), lambda1))
          ratios.push_back(r);
      }
  }
  for (const Rational& r : ratios) {
    auto perm = match_multisets(n, [&](std::size_t i, std::size_t j) { return r * v1[i] == v2[j]; });
    if (perm) {
      DGVerdict out = verdict(Verdict::isomorphic,
                              "rank-one groups matched by multiplication by " + r.get_str());
      out.permutation = *perm;
      return out;
    }
  }
  return verdict(Verdict::not_isomorphic, "no positive rescaling of the state carries one scale onto the other");
}

DGVerdict compare_rank2(const ScaledInvariant& s1, const ScaledInvariant& s2, std::size_t bound) {
  const auto m0 = rank2_order_isomorphism(s1.matrix, s2.matrix);
  if (!m0)
    return verdict(Verdict::not_isomorphic,
                   "Perron slopes lie in different GL(2,Z) classes (continued fraction tails differ)");
  const IntMatrix u = rank2_positive_automorphism(s1.matrix);
  const IntMatrix u_inv = unimodular_inverse2(u);
  const IntMatrix a1_inv = unimodular_inverse2(s1.matrix);
  const IntMatrix a2_inv = unimodular_inverse2(s2.matrix);
  std::vector<IntVector> x1, x2;
  for (const DGElement& x : s1.scale) x1.push_back(stage_zero(x, a1_inv));
  for (const DGElement& x : s2.scale) x2.push_back(stage_zero(x, a2_inv));
  const std::size_t n = x1.size();

  auto attempt = [&](const IntMatrix& phi) -> std::optional<DGVerdict> {
    auto perm = match_multisets(n, [&](std::size_t i, std::size_t j) { return phi * x1[i] == x2[j]; });
    if (!perm) return std::nullopt;
    DGVerdict out = verdict(Verdict::isomorphic, "order isomorphism from the continued fraction tails");
    out.permutation = *perm;
    out.order_isomorphism = phi;
    return out;
  };
  // every order isomorphism is m0 u^k
  IntMatrix fwd = *m0, back = *m0 * u_inv;
  for (std::size_t k = 0; k <= bound; ++k) {
    if (auto v = attempt(fwd)) return *v;
    if (auto v = attempt(back)) return *v;
    fwd = fwd * u;
    back = back * u_inv;
  }
  return verdict(Verdict::unknown, "no order isomorphism matching the scales within the search bound");
}

}  // namespace

DGVerdict compare_scaled_invariants(const ScaledInvariant& s1, const ScaledInvariant& s2,
                                    std::size_t bound) {
  const StationaryDimensionGroup g1(s1.matrix), g2(s2.matrix);
  if (!g1.ordered() || !g2.ordered())
    throw InvalidInput("scaled invariants need nonnegative matrices");
  for (const auto* s : {&s1, &s2})
    for (const DGElement& x : s->scale)
      if (x.vector.size() != s->matrix.rows())
        throw InvalidInput("scale element has the wrong length");

  const std::size_t n = s1.scale.size();
  if (n != s2.scale.size()) return verdict(Verdict::not_isomorphic, "scales have different sizes");
  const auto z1 = zero_flags(s1.scale, g1), z2 = zero_flags(s2.scale, g2);
  if (std::count(z1.begin(), z1.end(), true) != std::count(z2.begin(), z2.end(), true))
    return verdict(Verdict::not_isomorphic, "scales have different numbers of zero classes");
  if (auto why = dg_group_obstruction(s1.matrix, s2.matrix))
    return verdict(Verdict::not_isomorphic, "dimension groups differ: " + *why);
  const auto t1 = perron_slope(s1.matrix), t2 = perron_slope(s2.matrix);
  if (t1 && t2 && !same_field(*t1, *t2))
    return verdict(Verdict::not_isomorphic, "Perron values generate different fields Q(sqrt(" +
                                                t1->d().get_str() + ")) and Q(sqrt(" +
                                                t2->d().get_str() + "))");

  if (s1.matrix == s2.matrix) {
    auto perm = match_multisets(
        n, [&](std::size_t i, std::size_t j) { return dg_equal(s1.scale[i], s2.scale[j], g1); });
    if (perm) {
      DGVerdict out = verdict(Verdict::isomorphic, "identical groups and scales");
      out.permutation = *perm;
      out.order_isomorphism = IntMatrix::identity(s1.matrix.rows());
      return out;
    }
  }
  if (g1.primitive() && g2.primitive()) {
    if (eventual_rank(s1.matrix) == 1) return compare_rank1(s1, s2);
    if (is_rank2_unimodular_primitive(s1.matrix) && is_rank2_unimodular_primitive(s2.matrix))
      return compare_rank2(s1, s2, bound);
  }
  return verdict(Verdict::unknown,
                 "order isomorphism is decided exactly only for primitive matrices of eventual "
                 "rank 1 or 2x2 with |det| = 1");
}

DGVerdict compare_substitution_invariants(const SubstitutionInvariant& i1,
                                          const SubstitutionInvariant& i2, std::size_t bound) {
  validate_substitution(i1);
  validate_substitution(i2);
  if (i1.n != i2.n) return verdict(Verdict::not_isomorphic, "ideal ranks n differ");
  IntVector p1 = i1.p, p2 = i2.p;
  std::sort(p1.begin(), p1.end());
  std::sort(p2.begin(), p2.end());
  if (p1 != p2) return verdict(Verdict::not_isomorphic, "no permutation carries p1 to p2");
  if (auto why = dg_group_obstruction(i1.a, i2.a))
    return verdict(Verdict::not_isomorphic, "quotient groups differ: " + *why);
  if (auto why = dg_group_obstruction(i1.a_tilde, i2.a_tilde))
    return verdict(Verdict::not_isomorphic, "middle groups differ: " + *why);

  const StationaryDimensionGroup m1(i1.a_tilde), m2(i2.a_tilde);
  const auto q1 = q_scale(i1), q2 = q_scale(i2);
  const auto z1 = zero_flags(q1, m1), z2 = zero_flags(q2, m2);
  const std::size_t n = i1.n;

  // Permutations e_i -> e_perm[i] fixing p and the pattern of equal classes.
  std::vector<std::vector<std::size_t>> candidates;
  std::vector<std::size_t> perm(n);
  std::vector<bool> used(n, false);
  std::function<void(std::size_t)> extend = [&](std::size_t i) {
    if (candidates.size() >= bound) return;
    if (i == n) {
      candidates.push_back(perm);
      return;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || i1.p[i] != i2.p[j] || z1[i] != z2[j]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k)
        ok = dg_equal(q1[k], q1[i], m1) == dg_equal(q2[perm[k]], q2[j], m2);
      if (!ok) continue;
      used[j] = true;
      perm[i] = j;
      extend(i + 1);
      used[j] = false;
    }
  };
  extend(0);
  if (candidates.empty())
    return verdict(Verdict::not_isomorphic,
                   "no permutation of the ideal generators respects p and the scale");

  const bool q_vanishes = std::none_of(z1.begin(), z1.end(), [](bool z) { return !z; });
  if (q_vanishes) {
    // Q = 0 on both sides, so R is an isomorphism and only the quotient order matters.
    ScaledInvariant s1{i1.a, {}}, s2{i2.a, {}};
    DGVerdict out = compare_scaled_invariants(s1, s2, bound);
    if (out.verdict == Verdict::isomorphic) out.permutation = candidates.front();
    return out;
  }

  if (i1.a == i2.a) {
    const std::size_t m = i1.a.rows();
    for (const auto& c : candidates) {
      IntMatrix pm(m + n, m + n);
      for (std::size_t i = 0; i < m; ++i) pm(i, i) = 1;
      for (std::size_t i = 0; i < n; ++i) pm(m + c[i], m + i) = 1;
      if (pm * i1.a_tilde == i2.a_tilde * pm) {
        DGVerdict out = verdict(Verdict::isomorphic, "A_tilde conjugate by a permutation of the ideal generators");
        out.permutation = c;
        out.order_isomorphism = IntMatrix::identity(m);
        return out;
      }
    }
  }
  return verdict(Verdict::unknown,
                 "nonvanishing scale: no witness among permutation conjugacies of A_tilde");
}

}  // namespace kclass
