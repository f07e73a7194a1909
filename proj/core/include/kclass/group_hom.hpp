#pragma once

#include "kclass/abelian_group.hpp"
#include "kclass/smith.hpp"

namespace kclass {

/// Homomorphism between canonical groups, as an integer matrix acting on
/// canonical generator coordinates (codomain generators x domain generators).
///
/// Construction rejects ill-defined matrices (a torsion generator of order d
/// whose image is not killed by d) and reduces entries modulo codomain orders.
class GroupHom {
 public:
  GroupHom() = default;
  GroupHom(FgAbelianGroup domain, FgAbelianGroup codomain, IntMatrix matrix);

  static GroupHom identity(const FgAbelianGroup& g);
  static GroupHom zero(const FgAbelianGroup& domain, const FgAbelianGroup& codomain);
  /// Multiplication by k on a group.
  static GroupHom scalar(const FgAbelianGroup& g, const Integer& k);

  const FgAbelianGroup& domain() const { return domain_; }
  const FgAbelianGroup& codomain() const { return codomain_; }
  const IntMatrix& matrix() const { return matrix_; }

  IntVector apply(const IntVector& x) const;
  bool is_zero() const { return matrix_.is_zero(); }
  bool is_injective() const;
  bool is_surjective() const;
  bool is_isomorphism() const { return is_injective() && is_surjective(); }
  /// Throws InvalidInput unless this is an isomorphism.
  GroupHom inverse() const;

  friend bool operator==(const GroupHom& a, const GroupHom& b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.matrix_ == b.matrix_;
  }
  friend bool operator!=(const GroupHom& a, const GroupHom& b) { return !(a == b); }

 private:
  FgAbelianGroup domain_;
  FgAbelianGroup codomain_;
  IntMatrix matrix_;
};

/// outer ∘ inner. Throws InvalidInput if inner's codomain is not outer's domain.
GroupHom compose(const GroupHom& outer, const GroupHom& inner);

/// True iff the matrix defines a homomorphism domain -> codomain.
bool is_well_defined(const FgAbelianGroup& domain, const FgAbelianGroup& codomain,
                     const IntMatrix& matrix);

/// Some x with f(x) = y in the codomain, if y lies in the image.
std::optional<IntVector> preimage(const GroupHom& f, const IntVector& y);

/// preimage() for a fixed map and many targets.
class PreimageSolver {
 public:
  explicit PreimageSolver(const GroupHom& f);
  std::optional<IntVector> operator()(const IntVector& y) const;

 private:
  FgAbelianGroup domain_;
  IntegerSolver solver_;
};

}  // namespace kclass
