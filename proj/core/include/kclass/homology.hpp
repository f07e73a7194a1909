#pragma once

#include "kclass/group_hom.hpp"

namespace kclass {

struct KernelResult {
  FgAbelianGroup group;
  GroupHom inclusion;  // injective, image = ker f
};

struct CokernelResult {
  FgAbelianGroup group;
  GroupHom projection;  // surjective, kernel = im f
  IntMatrix section;    // lifts of the cokernel's canonical generators
};

KernelResult kernel(const GroupHom& f);
CokernelResult cokernel(const GroupHom& f);

/// image(f) == kernel(g) as subgroups of codomain(f) = domain(g).
/// Throws InvalidInput when the groups do not match.
bool is_exact_pair(const GroupHom& f, const GroupHom& g);

/// Preimage under an injective map, which is then unique.
IntVector lift_through_injection(const GroupHom& injection, const IntVector& y);

}  // namespace kclass
