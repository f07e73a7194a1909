#include "kclass/six_term.hpp"

#include "kclass/dimension_group.hpp"
#include "kclass/error.hpp"
#include "kclass/homology.hpp"

#include <unordered_set>

namespace kclass {

std::string to_string(ConeKind kind) {
  switch (kind) {
    case ConeKind::all_positive: return "all_positive";
    case ConeKind::standard_free: return "standard_free";
    case ConeKind::stationary_dg: return "stationary_dg";
    case ConeKind::unordered: return "unordered";
  }
  return "unordered";
}

ConeKind cone_kind_from_string(const std::string& name) {
  for (ConeKind k : {ConeKind::all_positive, ConeKind::standard_free, ConeKind::stationary_dg,
                     ConeKind::unordered})
    if (to_string(k) == name) return k;
  throw ParseError("unknown cone kind '" + name + "'");
}

const char* node_name(std::size_t node) {
  static const char* const names[] = {"K0B", "K0E", "K0A", "K1B", "K1E", "K1A"};
  return node < 6 ? names[node] : "?";
}

ConeDescriptor normalized_cone(const FgAbelianGroup& g, const ConeDescriptor& cone) {
  if (g.is_trivial() || cone.kind == ConeKind::unordered) return ConeDescriptor::all_positive();
  if (cone.kind == ConeKind::stationary_dg && cone.matrix.rows() == 1)
    return ConeDescriptor::standard_free();
  return cone;
}

SixTermInvariant make_sixterm(const std::array<FgAbelianGroup, 6>& groups) {
  SixTermInvariant s;
  s.groups = groups;
  for (std::size_t k = 0; k < 6; ++k) s.maps[k] = GroupHom::zero(groups[k], groups[(k + 1) % 6]);
  return s;
}

namespace {

std::optional<std::string> cone_problem(const FgAbelianGroup& g, const ConeDescriptor& cone) {
  switch (cone.kind) {
    case ConeKind::all_positive:
    case ConeKind::unordered:
      return std::nullopt;
    case ConeKind::standard_free:
      if (!g.is_free()) return "standard_free cone on a group with torsion";
      return std::nullopt;
    case ConeKind::stationary_dg: {
      const IntMatrix& m = cone.matrix;
      if (!g.is_free()) return "stationary_dg cone on a group with torsion";
      if (!m.is_square() || m.rows() != g.free_rank())
        return "stationary_dg matrix size does not match the rank";
      if (!is_primitive(m)) return "stationary_dg matrix is not primitive";
      if (abs(m.determinant()) != 1)
        return "stationary_dg matrix must have determinant +-1 for a finitely generated limit";
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<Violation> validate_sixterm(const SixTermInvariant& s) {
  std::vector<Violation> out;
  std::array<bool, 6> composable{};
  for (std::size_t k = 0; k < 6; ++k) {
    const std::size_t next = (k + 1) % 6;
    const std::string label = std::string(node_name(k)) + "->" + node_name(next);
    composable[k] = s.maps[k].domain() == s.groups[k] && s.maps[k].codomain() == s.groups[next];
    if (s.maps[k].domain() != s.groups[k])
      out.push_back({k, "map " + label + " has domain " + s.maps[k].domain().to_string()});
    if (s.maps[k].codomain() != s.groups[next])
      out.push_back({next, "map " + label + " has codomain " + s.maps[k].codomain().to_string()});
  }
  for (std::size_t k = 0; k < 6; ++k) {
    const std::size_t prev = (k + 5) % 6;
    if (!composable[prev] || !composable[k]) continue;
    if (!is_exact_pair(s.maps[prev], s.maps[k]))
      out.push_back({k, std::string("not exact at ") + node_name(k) + ": image of " +
                            node_name(prev) + "->" + node_name(k) + " differs from kernel of " +
                            node_name(k) + "->" + node_name((k + 1) % 6)});
  }
  if (auto p = cone_problem(s.groups[k0_ideal], s.cone_b)) out.push_back({k0_ideal, *p});
  if (auto p = cone_problem(s.groups[k0_quotient], s.cone_a)) out.push_back({k0_quotient, *p});
  if (s.cone_e)
    if (auto p = cone_problem(s.groups[k0_middle], *s.cone_e)) out.push_back({k0_middle, *p});
  return out;
}

SixTermMorphism identity_morphism(const SixTermInvariant& s) {
  SixTermMorphism w;
  for (std::size_t k = 0; k < 6; ++k) w[k] = GroupHom::identity(s.groups[k]);
  return w;
}

bool is_order_isomorphism(const GroupHom& f, const ConeDescriptor& from, const ConeDescriptor& to) {
  const ConeDescriptor c1 = normalized_cone(f.domain(), from);
  const ConeDescriptor c2 = normalized_cone(f.codomain(), to);
  if (c1.kind != c2.kind) return false;
  const IntMatrix& m = f.matrix();
  switch (c1.kind) {
    case ConeKind::all_positive:
    case ConeKind::unordered:
      return true;
    case ConeKind::standard_free: {
      // N^n onto N^n: a permutation matrix
      for (std::size_t j = 0; j < m.cols(); ++j) {
        int ones = 0;
        for (std::size_t i = 0; i < m.rows(); ++i) {
          if (m(i, j) == 1) ++ones;
          else if (m(i, j) != 0) return false;
        }
        if (ones != 1) return false;
      }
      return true;
    }
    case ConeKind::stationary_dg: {
      if (m.rows() != 2) {
        // sizes above 2 are never produced as witnesses; be conservative
        return c1.matrix == c2.matrix && m == IntMatrix::identity(m.rows());
      }
      // the functional of `to`, pulled back, must be a positive multiple of that of `from`
      const auto t1 = perron_slope(c1.matrix), t2 = perron_slope(c2.matrix);
      if (!t1 || !t2) return false;
      IntMatrix w{{0, 0}, {0, 0}};
      w(0, 0) = m(1, 1);
      w(0, 1) = m(0, 1);
      w(1, 0) = m(1, 0);
      w(1, 1) = m(0, 0);
      if (w.determinant() == 0) return false;
      return t2->mobius(w) == *t1 && t2->affine_sign(m(0, 0), m(1, 0)) > 0;
    }
  }
  return false;
}

std::optional<std::string> witness_failure(const SixTermInvariant& s1, const SixTermInvariant& s2,
                                           const SixTermMorphism& w) {
  for (std::size_t k = 0; k < 6; ++k) {
    if (w[k].domain() != s1.groups[k] || w[k].codomain() != s2.groups[k])
      return std::string("component at ") + node_name(k) + " has the wrong groups";
    if (!w[k].is_isomorphism()) return std::string("component at ") + node_name(k) + " is not bijective";
  }
  for (std::size_t k = 0; k < 6; ++k) {
    const std::size_t next = (k + 1) % 6;
    if (compose(s2.maps[k], w[k]) != compose(w[next], s1.maps[k]))
      return std::string("square ") + node_name(k) + "->" + node_name(next) + " does not commute";
  }
  if (!is_order_isomorphism(w[k0_ideal], s1.cone_b, s2.cone_b))
    return "component at K0B is not an order isomorphism";
  if (!is_order_isomorphism(w[k0_quotient], s1.cone_a, s2.cone_a))
    return "component at K0A is not an order isomorphism";
  return std::nullopt;
}

bool verify_witness(const SixTermInvariant& s1, const SixTermInvariant& s2,
                    const SixTermMorphism& w) {
  try {
    return !witness_failure(s1, s2, w);
  } catch (const InvalidInput&) {
    return false;
  }
}

namespace {

// Product in End(T) for T = (+) Z/orders[i], reduced row by row.
IntMatrix torsion_product(const IntMatrix& x, const IntMatrix& y, const IntVector& orders) {
  IntMatrix z = x * y;
  for (std::size_t i = 0; i < z.rows(); ++i)
    for (std::size_t j = 0; j < z.cols(); ++j) z(i, j) = floor_mod(z(i, j), orders[i]);
  return z;
}

// Generators of Aut((+) Z/orders[i]) found by enumerating every endomorphism
// and keeping those not already generated.
std::vector<IntMatrix> torsion_automorphism_generators(const IntVector& orders) {
  const std::size_t t = orders.size();
  if (t == 0) return {};
  // X(i, j) ranges over multiples of step(i, j) = d_i / gcd(d_i, d_j)
  std::vector<Integer> steps(t * t), counts(t * t);
  Integer total = 1;
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) {
      const Integer g = gcd(orders[i], orders[j]);
      steps[i * t + j] = orders[i] / g;
      counts[i * t + j] = g;
      total *= g;
    }
  if (total > Integer(static_cast<unsigned long>(kMaxEnumeratedEndomorphisms)))
    throw Unsupported("automorphism group of the torsion part is too large to enumerate (" +
                      total.get_str() + " endomorphisms)");

  const FgAbelianGroup group = FgAbelianGroup::canonical(0, orders);
  std::vector<IntMatrix> autos;
  std::vector<Integer> digit(t * t, Integer(0));
  for (;;) {
    IntMatrix x(t, t);
    for (std::size_t e = 0; e < t * t; ++e) x(e / t, e % t) = digit[e] * steps[e];
    if (GroupHom(group, group, x).is_injective()) autos.push_back(std::move(x));
    std::size_t e = 0;
    while (e < t * t && digit[e] + 1 == counts[e]) digit[e++] = 0;
    if (e == t * t) break;
    ++digit[e];
  }

  std::vector<IntMatrix> gens;
  std::unordered_set<std::string> generated{IntMatrix::identity(t).to_string()};
  for (const IntMatrix& a : autos) {
    if (generated.count(a.to_string())) continue;
    gens.push_back(a);
    std::vector<IntMatrix> frontier{IntMatrix::identity(t)};
    generated = {frontier.front().to_string()};
    for (std::size_t head = 0; head < frontier.size(); ++head)
      for (const IntMatrix& g : gens) {
        IntMatrix next = torsion_product(g, frontier[head], orders);
        if (generated.insert(next.to_string()).second) frontier.push_back(std::move(next));
      }
    if (generated.size() == autos.size()) break;
  }
  return gens;
}

IntMatrix embed(const IntMatrix& block, std::size_t offset, std::size_t n) {
  IntMatrix m = IntMatrix::identity(n);
  for (std::size_t i = 0; i < block.rows(); ++i)
    for (std::size_t j = 0; j < block.cols(); ++j) m(offset + i, offset + j) = block(i, j);
  return m;
}

std::vector<IntMatrix> general_linear_generators(std::size_t r) {
  std::vector<IntMatrix> out;
  if (r == 0) return out;
  IntMatrix flip = IntMatrix::identity(r);
  flip(0, 0) = -1;
  out.push_back(flip);
  if (r == 1) return out;
  IntMatrix elementary = IntMatrix::identity(r);
  elementary(0, 1) = 1;
  out.push_back(elementary);
  for (std::size_t i = 0; i + 1 < r; ++i) {
    IntMatrix swap = IntMatrix::identity(r);
    swap.swap_rows(i, i + 1);
    out.push_back(swap);
  }
  return out;
}

}  // namespace

std::vector<GroupHom> aut_plus_generators(const FgAbelianGroup& g, const ConeDescriptor& cone) {
  if (auto p = cone_problem(g, cone)) throw InvalidInput(*p);
  const ConeDescriptor c = normalized_cone(g, cone);
  const std::size_t n = g.generator_count(), r = g.free_rank();
  std::vector<GroupHom> out;
  auto add = [&](const IntMatrix& m) { out.emplace_back(g, g, m); };

  switch (c.kind) {
    case ConeKind::standard_free:
      if (r <= 1) add(IntMatrix::identity(n));
      for (std::size_t i = 0; i + 1 < r; ++i) {
        IntMatrix swap = IntMatrix::identity(n);
        swap.swap_rows(i, i + 1);
        add(swap);
      }
      return out;
    case ConeKind::stationary_dg:
      if (r != 2) throw Unsupported("order automorphisms of stationary orders above rank 2");
      add(rank2_positive_automorphism(c.matrix));
      return out;
    case ConeKind::all_positive:
    case ConeKind::unordered:
      break;
  }

  if (n == 0) {
    add(IntMatrix::identity(0));
    return out;
  }
  for (const IntMatrix& m : general_linear_generators(r)) add(embed(m, 0, n));
  for (const IntMatrix& m : torsion_automorphism_generators(g.torsion())) add(embed(m, r, n));
  // shears e_i -> e_i + t_j from the free part into the torsion part
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = r; j < n; ++j) {
      IntMatrix m = IntMatrix::identity(n);
      m(j, i) = 1;
      add(m);
    }
  if (out.empty()) add(IntMatrix::identity(n));
  return out;
}

}  // namespace kclass
