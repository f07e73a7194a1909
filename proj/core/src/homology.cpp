#include "kclass/homology.hpp"

#include "kclass/error.hpp"
#include "kclass/smith.hpp"

namespace kclass {

KernelResult kernel(const GroupHom& f) {
  const FgAbelianGroup& g = f.domain();
  const std::size_t n = g.generator_count();

  // L = {x in Z^n : f(x) is a codomain relation}; the torsion-only relation
  // block keeps the projection (x, y) -> x injective on the solution lattice.
  const IntMatrix solutions =
      integer_kernel(IntMatrix::hstack(f.matrix(), -f.codomain().torsion_relations()));
  const IntMatrix basis = solutions.block(0, 0, n, solutions.cols());

  // Domain relations rewritten in the basis of L.
  const IntMatrix domain_relations = g.torsion_relations();
  IntMatrix coords(basis.cols(), domain_relations.cols());
  for (std::size_t c = 0; c < domain_relations.cols(); ++c) {
    auto sol = solve_integer(basis, domain_relations.column(c));
    if (!sol) throw std::logic_error("kernel: domain relation outside kernel lattice");
    coords.set_column(c, *sol);
  }

  const Presentation p = present_cokernel(coords);
  return KernelResult{p.group, GroupHom(p.group, g, basis * p.section)};
}

CokernelResult cokernel(const GroupHom& f) {
  const FgAbelianGroup& h = f.codomain();
  const Presentation p =
      present_cokernel(IntMatrix::hstack(f.matrix(), h.torsion_relations()));
  return CokernelResult{p.group, GroupHom(h, p.group, p.projection), p.section};
}

bool is_exact_pair(const GroupHom& f, const GroupHom& g) {
  if (f.codomain() != g.domain())
    throw InvalidInput("exactness check: " + f.codomain().to_string() + " is not " +
                       g.domain().to_string());
  if (!compose(g, f).is_zero()) return false;
  const KernelResult k = kernel(g);
  for (std::size_t i = 0; i < k.group.generator_count(); ++i)
    if (!preimage(f, k.inclusion.matrix().column(i))) return false;
  return true;
}

IntVector lift_through_injection(const GroupHom& injection, const IntVector& y) {
  auto x = preimage(injection, y);
  if (!x) throw InvalidInput("element is not in the image of the injection");
  return *x;
}

}  // namespace kclass
