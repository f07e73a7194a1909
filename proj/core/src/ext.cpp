#include "kclass/ext.hpp"

#include "kclass/error.hpp"

#include <deque>
#include <sstream>
#include <unordered_map>

namespace kclass {

namespace {

Integer relation_gcd(const Integer& a, const Integer& order) {
  if (order == 0) return a;
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), order.get_mpz_t());
  return g;
}

std::string key_of(const IntVector& v) {
  std::ostringstream os;
  for (const auto& x : v) os << x << ',';
  return os.str();
}

}  // namespace

IntVector ExtGroup::to_canonical(const IntVector& raw) const {
  return group.reduce(projection * raw);
}

IntVector ExtGroup::to_raw(const IntVector& canonical) const { return section * canonical; }

ExtGroup ext1_presented(const FgAbelianGroup& a, const FgAbelianGroup& b) {
  const std::size_t nb = b.generator_count();
  IntVector relations;
  for (const auto& ai : a.torsion())
    for (std::size_t j = 0; j < nb; ++j) relations.push_back(relation_gcd(ai, b.generator_order(j)));
  const Presentation p = present_cokernel(IntMatrix::diagonal(relations));
  return ExtGroup{a, b, p.group, p.projection, p.section};
}

FgAbelianGroup ext1(const FgAbelianGroup& a, const FgAbelianGroup& b) {
  return ext1_presented(a, b).group;
}

ExtElement extension_class(const ExtGroup& ext, const GroupHom& inclusion,
                           const GroupHom& projection) {
  if (inclusion.domain() != ext.b || projection.codomain() != ext.a)
    throw InvalidInput("extension does not match the Ext group's end terms");
  if (inclusion.codomain() != projection.domain())
    throw InvalidInput("extension maps are not composable");
  if (!inclusion.is_injective()) throw InvalidInput("extension: left map is not injective");
  if (!projection.is_surjective()) throw InvalidInput("extension: right map is not surjective");
  if (!is_exact_pair(inclusion, projection)) throw InvalidInput("extension is not exact in the middle");
  return extension_class_unchecked(ext, inclusion, projection);
}

ExtElement extension_class_unchecked(const ExtGroup& ext, const GroupHom& inclusion,
                                     const GroupHom& projection) {
  const FgAbelianGroup& a = ext.a;
  const std::size_t nb = ext.b.generator_count();
  IntVector raw(ext.raw_size());
  if (a.torsion().empty()) return ExtElement{ext.group, ext.to_canonical(raw)};
  const PreimageSolver lift_a(projection), lift_b(inclusion);
  for (std::size_t k = 0; k < a.torsion().size(); ++k) {
    const std::size_t gen = a.free_rank() + k;
    const auto lift = lift_a(unit_vector(a.generator_count(), gen));
    if (!lift) throw InvalidInput("extension: right map is not surjective");
    const auto landed = lift_b(a.torsion()[k] * *lift);
    if (!landed) throw InvalidInput("extension is not exact in the middle");
    for (std::size_t j = 0; j < nb; ++j) raw[k * nb + j] = (*landed)[j];
  }
  return ExtElement{ext.group, ext.to_canonical(raw)};
}

ExtElement extension_class(const GroupHom& inclusion, const GroupHom& projection) {
  return extension_class(ext1_presented(projection.codomain(), inclusion.domain()), inclusion,
                         projection);
}

GroupHom ext_pushforward(const ExtGroup& source, const ExtGroup& target, const GroupHom& beta) {
  if (source.a != target.a || beta.domain() != source.b || beta.codomain() != target.b)
    throw InvalidInput("pushforward: groups do not match");
  const std::size_t t = source.a.torsion().size();
  const std::size_t n1 = source.b.generator_count();
  const std::size_t n2 = target.b.generator_count();
  IntMatrix m(target.group.generator_count(), source.group.generator_count());
  for (std::size_t c = 0; c < source.group.generator_count(); ++c) {
    const IntVector raw = source.section.column(c);
    IntVector pushed(t * n2);
    for (std::size_t k = 0; k < t; ++k) {
      const IntVector block(raw.begin() + static_cast<std::ptrdiff_t>(k * n1),
                            raw.begin() + static_cast<std::ptrdiff_t>((k + 1) * n1));
      const IntVector image = beta.matrix() * block;
      for (std::size_t j = 0; j < n2; ++j) pushed[k * n2 + j] = image[j];
    }
    m.set_column(c, target.to_canonical(pushed));
  }
  return GroupHom(source.group, target.group, m);
}

GroupHom ext_pullback(const ExtGroup& source, const ExtGroup& target, const GroupHom& alpha) {
  if (source.b != target.b || alpha.domain() != target.a || alpha.codomain() != source.a)
    throw InvalidInput("pullback: groups do not match");
  const FgAbelianGroup& a1 = target.a;
  const FgAbelianGroup& a2 = source.a;
  const std::size_t nb = source.b.generator_count();

  // alpha restricted to relation lattices: d1_i e_i |-> sum_j c(j, i) d2_j e_j.
  IntMatrix c(a2.torsion().size(), a1.torsion().size());
  for (std::size_t i = 0; i < a1.torsion().size(); ++i)
    for (std::size_t j = 0; j < a2.torsion().size(); ++j) {
      const Integer entry = alpha.matrix()(a2.free_rank() + j, a1.free_rank() + i);
      c(j, i) = a1.torsion()[i] * entry / a2.torsion()[j];
    }

  IntMatrix m(target.group.generator_count(), source.group.generator_count());
  for (std::size_t col = 0; col < source.group.generator_count(); ++col) {
    const IntVector raw = source.section.column(col);
    IntVector pulled(target.raw_size(), Integer(0));
    for (std::size_t i = 0; i < a1.torsion().size(); ++i)
      for (std::size_t j = 0; j < a2.torsion().size(); ++j) {
        if (c(j, i) == 0) continue;
        for (std::size_t k = 0; k < nb; ++k) pulled[i * nb + k] += c(j, i) * raw[j * nb + k];
      }
    m.set_column(col, target.to_canonical(pulled));
  }
  return GroupHom(source.group, target.group, m);
}

OrbitDecision aut_orbit_decide(const ExtGroup& ext, const ExtElement& x1, const ExtElement& x2,
                               const std::vector<GroupHom>& aut_a,
                               const std::vector<GroupHom>& aut_b, std::size_t bound) {
  if (x1.group != ext.group || x2.group != ext.group)
    throw InvalidInput("orbit decision: elements do not belong to the Ext group");

  struct Move {
    bool pullback;
    std::size_t index;
  };
  std::vector<GroupHom> actions;
  std::vector<Move> moves;
  for (std::size_t i = 0; i < aut_a.size(); ++i) {
    if (aut_a[i].domain() != ext.a || aut_a[i].codomain() != ext.a || !aut_a[i].is_isomorphism())
      throw InvalidInput("orbit decision: generator is not an automorphism of A");
    actions.push_back(ext_pullback(ext, ext, aut_a[i]));
    moves.push_back({true, i});
  }
  for (std::size_t i = 0; i < aut_b.size(); ++i) {
    if (aut_b[i].domain() != ext.b || aut_b[i].codomain() != ext.b || !aut_b[i].is_isomorphism())
      throw InvalidInput("orbit decision: generator is not an automorphism of B");
    actions.push_back(ext_pushforward(ext, ext, aut_b[i]));
    moves.push_back({false, i});
  }

  const IntVector start = ext.group.reduce(x1.coords);
  const IntVector goal = ext.group.reduce(x2.coords);

  struct Node {
    IntVector element;
    std::size_t parent;
    std::size_t action;
  };
  std::vector<Node> nodes{{start, 0, 0}};
  std::unordered_map<std::string, std::size_t> seen{{key_of(start), 0}};

  auto witness = [&](std::size_t at) {
    std::vector<std::size_t> path;
    for (; at != 0; at = nodes[at].parent) path.push_back(nodes[at].action);
    GroupHom gamma = GroupHom::identity(ext.a);
    GroupHom beta = GroupHom::identity(ext.b);
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      const Move& mv = moves[*it];
      if (mv.pullback)
        gamma = compose(gamma, aut_a[mv.index]);
      else
        beta = compose(aut_b[mv.index], beta);
    }
    OrbitDecision out;
    out.decision = Decision::yes;
    out.alpha = gamma.inverse();
    out.beta = beta;
    out.explored = nodes.size();
    return out;
  };

  if (start == goal) return witness(0);

  for (std::size_t head = 0; head < nodes.size(); ++head) {
    for (std::size_t a = 0; a < actions.size(); ++a) {
      IntVector next = actions[a].apply(nodes[head].element);
      if (!seen.emplace(key_of(next), nodes.size()).second) continue;
      nodes.push_back({std::move(next), head, a});
      if (nodes.back().element == goal) return witness(nodes.size() - 1);
      if (nodes.size() > bound) {
        OrbitDecision out;
        out.explored = nodes.size();
        return out;
      }
    }
  }
  OrbitDecision out;
  out.decision = Decision::no;
  out.explored = nodes.size();
  return out;
}

}  // namespace kclass
