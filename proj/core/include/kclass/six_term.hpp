#pragma once

#include "kclass/group_hom.hpp"
#include "kclass/verdict.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace kclass {

enum class ConeKind {
  all_positive,   // purely infinite simple: every element is positive
  standard_free,  // Z^n with the coordinatewise cone (AF ideal or quotient)
  stationary_dg,  // Z^n = DG(P) for |det P| = 1, ordered by P's Perron functional
  unordered,      // no order constraint
};

std::string to_string(ConeKind kind);
/// Throws ParseError for an unknown name.
ConeKind cone_kind_from_string(const std::string& name);

struct ConeDescriptor {
  ConeKind kind = ConeKind::unordered;
  IntMatrix matrix;  // stationary_dg only

  static ConeDescriptor all_positive() { return {ConeKind::all_positive, {}}; }
  static ConeDescriptor standard_free() { return {ConeKind::standard_free, {}}; }
  static ConeDescriptor unordered() { return {ConeKind::unordered, {}}; }
  static ConeDescriptor stationary(IntMatrix m) { return {ConeKind::stationary_dg, std::move(m)}; }

  friend bool operator==(const ConeDescriptor& x, const ConeDescriptor& y) {
    return x.kind == y.kind && x.matrix == y.matrix;
  }
};

/// Cone with the equivalent descriptions identified: unordered on K0 acts
/// like all_positive, every cone on the trivial group is all_positive and a
/// 1x1 stationary order is the standard one.
ConeDescriptor normalized_cone(const FgAbelianGroup& g, const ConeDescriptor& cone);

/// Node order follows the arrows of the hexagon:
/// K0(B) -> K0(E) -> K0(A) -> K1(B) -> K1(E) -> K1(A) -> K0(B).
enum Node : std::size_t { k0_ideal, k0_middle, k0_quotient, k1_ideal, k1_middle, k1_quotient };

/// "K0B", "K0E", "K0A", "K1B", "K1E", "K1A".
const char* node_name(std::size_t node);

/// Cyclic six-term exact sequence of an extension 0 -> B -> E -> A -> 0.
/// maps[k] goes from groups[k] to groups[(k + 1) % 6]; maps[2] and maps[5]
/// are the exponential and index maps.
struct SixTermInvariant {
  std::array<FgAbelianGroup, 6> groups;
  std::array<GroupHom, 6> maps;
  ConeDescriptor cone_b = ConeDescriptor::unordered();  // on K0(B)
  ConeDescriptor cone_a = ConeDescriptor::unordered();  // on K0(A)
  /// Carried along for reference; decisions ignore the middle order.
  std::optional<ConeDescriptor> cone_e;

  friend bool operator==(const SixTermInvariant& x, const SixTermInvariant& y) {
    return x.groups == y.groups && x.maps == y.maps && x.cone_b == y.cone_b &&
           x.cone_a == y.cone_a && x.cone_e == y.cone_e;
  }
};

/// All-zero maps between the given groups.
SixTermInvariant make_sixterm(const std::array<FgAbelianGroup, 6>& groups);

struct Violation {
  std::size_t node;
  std::string message;
};

/// Empty when the sequence is composable, exact at every node and the cone
/// annotations fit their groups.
std::vector<Violation> validate_sixterm(const SixTermInvariant& s);

/// Component maps (beta0, eta0, alpha0, beta1, eta1, alpha1), indexed like the nodes.
using SixTermMorphism = std::array<GroupHom, 6>;

SixTermMorphism identity_morphism(const SixTermInvariant& s);

/// Does f map the positive cone of `from` onto that of `to`? The group
/// isomorphism itself is assumed.
bool is_order_isomorphism(const GroupHom& f, const ConeDescriptor& from, const ConeDescriptor& to);

/// Why w is not an isomorphism s1 -> s2 with order-preserving end maps, or
/// nullopt when it is.
std::optional<std::string> witness_failure(const SixTermInvariant& s1, const SixTermInvariant& s2,
                                           const SixTermMorphism& w);
bool verify_witness(const SixTermInvariant& s1, const SixTermInvariant& s2,
                    const SixTermMorphism& w);

inline constexpr std::size_t kMaxEnumeratedEndomorphisms = 200'000;

/// Generators of the group of automorphisms of g preserving the cone.
/// Finite parts are enumerated outright; throws Unsupported when that is too
/// large or the cone is a stationary order of rank above 2.
std::vector<GroupHom> aut_plus_generators(const FgAbelianGroup& g, const ConeDescriptor& cone);

struct IsoVerdict {
  Verdict verdict = Verdict::unknown;
  /// Obstruction for not_isomorphic, reason for unknown, method for isomorphic.
  std::string reason;
  std::optional<SixTermMorphism> witness;
  std::size_t explored = 0;
};

inline constexpr std::size_t kDefaultSixTermBound = 10'000;

/// Is there an isomorphism of six-term sequences whose K0(B) and K0(A)
/// components are order isomorphisms? The bound caps the search over
/// automorphisms of the end groups; it is ignored when every group is finite,
/// since the search space is then finite. Throws InvalidInput if either
/// invariant fails validation.
IsoVerdict decide_iso_one_ideal(const SixTermInvariant& s1, const SixTermInvariant& s2,
                                std::size_t bound = kDefaultSixTermBound);

}  // namespace kclass
