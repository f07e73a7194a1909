#pragma once

#include "kclass/homology.hpp"

#include <cstddef>
#include <vector>

namespace kclass {

/// Ext^1_Z(A, B) = (+)_i B / d_i B over the torsion generators of A.
///
/// Raw coordinates list one element of B per torsion generator of A (a
/// factor set on A's relation lattice); projection/section translate between
/// raw and canonical coordinates of the Ext group.
struct ExtGroup {
  FgAbelianGroup a;
  FgAbelianGroup b;
  FgAbelianGroup group;
  IntMatrix projection;  // group gens x raw
  IntMatrix section;     // raw x group gens

  std::size_t raw_size() const { return a.torsion().size() * b.generator_count(); }
  IntVector to_canonical(const IntVector& raw) const;
  IntVector to_raw(const IntVector& canonical) const;
};

struct ExtElement {
  FgAbelianGroup group;
  IntVector coords;

  bool is_zero() const { return group.is_zero_element(coords); }
  friend bool operator==(const ExtElement& x, const ExtElement& y) {
    return x.group == y.group && x.group.equal_elements(x.coords, y.coords);
  }
};

ExtGroup ext1_presented(const FgAbelianGroup& a, const FgAbelianGroup& b);
FgAbelianGroup ext1(const FgAbelianGroup& a, const FgAbelianGroup& b);

/// Class of 0 -> B --inclusion--> G --projection--> A -> 0 in Ext(A, B),
/// computed by lifting A's torsion generators through G and recording which
/// element of B their order multiples land on. The extension
/// 0 -> Z --m--> Z --mod m--> Z/m -> 0 has class +1 times the generator.
/// Throws InvalidInput if the sequence is not short exact.
ExtElement extension_class(const ExtGroup& ext, const GroupHom& inclusion,
                           const GroupHom& projection);
ExtElement extension_class(const GroupHom& inclusion, const GroupHom& projection);
/// extension_class without the exactness checks, for callers that already
/// know the sequence is short exact.
ExtElement extension_class_unchecked(const ExtGroup& ext, const GroupHom& inclusion,
                                     const GroupHom& projection);

/// beta_* : Ext(A, B1) -> Ext(A, B2) for beta : B1 -> B2.
GroupHom ext_pushforward(const ExtGroup& source, const ExtGroup& target, const GroupHom& beta);
/// alpha^* : Ext(A2, B) -> Ext(A1, B) for alpha : A1 -> A2.
GroupHom ext_pullback(const ExtGroup& source, const ExtGroup& target, const GroupHom& alpha);

enum class Decision { yes, no, unknown };

struct OrbitDecision {
  Decision decision = Decision::unknown;
  /// When yes: beta_*(x1) = alpha^*(x2).
  GroupHom alpha;
  GroupHom beta;
  std::size_t explored = 0;
};

inline constexpr std::size_t kDefaultOrbitBound = 1'000'000;

/// Is x2 in the orbit of x1 under the group generated by pullbacks along
/// aut_a and pushforwards along aut_b? Ext groups of finitely generated
/// groups are finite, so the orbit is enumerated outright; the answer is
/// unknown only if it holds more than `bound` elements.
OrbitDecision aut_orbit_decide(const ExtGroup& ext, const ExtElement& x1, const ExtElement& x2,
                               const std::vector<GroupHom>& aut_a,
                               const std::vector<GroupHom>& aut_b,
                               std::size_t bound = kDefaultOrbitBound);

}  // namespace kclass
