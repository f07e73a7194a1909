#pragma once

#include "kclass/dimension_group.hpp"
#include "kclass/verdict.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kclass {

/// Finite data of a basic substitution: the ideal K_0 is Z^n with the
/// vector p, the quotient K_0 is DG(a) and the middle K_0 is DG(a_tilde).
///
/// Coordinates of a_tilde list the |alphabet| letters first and the n ideal
/// generators last, so a_tilde = [[a, 0], [b, c]]. The map Q sends e_i to
/// the class of the (|alphabet| + i)-th unit vector at stage 0 and R is
/// induced by projecting onto the first |alphabet| coordinates.
struct SubstitutionInvariant {
  std::size_t n = 0;
  IntVector p;
  IntMatrix a;
  IntMatrix a_tilde;
};

/// Throws InvalidInput when sizes disagree, a has negative entries, p is not
/// strictly positive, or a_tilde's upper right block is nonzero (R would not
/// be well defined).
void validate_substitution(const SubstitutionInvariant& inv);

/// An ordered dimension group with a distinguished multiset.
struct ScaledInvariant {
  IntMatrix matrix;
  std::vector<DGElement> scale;
};

/// (DG(a), [R(Q(e_1)), ..., R(Q(e_n))]).
ScaledInvariant scaled_triple(const SubstitutionInvariant& inv);
/// [Q(e_1), ..., Q(e_n)] as elements of DG(a_tilde).
std::vector<DGElement> q_scale(const SubstitutionInvariant& inv);

struct DGVerdict {
  Verdict verdict = Verdict::unknown;
  std::string reason;
  /// When isomorphic: scale index i of the first input goes to permutation[i].
  std::vector<std::size_t> permutation;
  /// When isomorphic and available: the order isomorphism on stage-0
  /// coordinates of the (quotient) dimension groups.
  std::optional<IntMatrix> order_isomorphism;
};

inline constexpr std::size_t kDefaultSubstitutionBound = 10'000;

/// Is there an order isomorphism DG(m1) -> DG(m2) carrying one scale onto
/// the other as multisets?
DGVerdict compare_scaled_invariants(const ScaledInvariant& s1, const ScaledInvariant& s2,
                                    std::size_t bound = kDefaultSubstitutionBound);

/// Decides the commuting-diagram criterion for the two invariants; exact
/// when the ideal classes vanish and the quotient groups have rank 1 or are
/// unimodular of rank 2, bounded otherwise.
DGVerdict compare_substitution_invariants(const SubstitutionInvariant& i1,
                                          const SubstitutionInvariant& i2,
                                          std::size_t bound = kDefaultSubstitutionBound);

}  // namespace kclass
