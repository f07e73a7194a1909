#pragma once

#include "kclass/int_matrix.hpp"

#include <optional>
#include <string>

namespace kclass {

/// A finitely generated abelian group Z^r + Z/d1 + ... + Z/dk in canonical
/// form: every di >= 2 and d1 | d2 | ... | dk. Two values compare equal iff
/// the groups are isomorphic.
///
/// Canonical generators are ordered free first, then torsion in increasing
/// invariant-factor order. Every GroupHom matrix is read against this order.
class FgAbelianGroup {
 public:
  FgAbelianGroup() = default;

  static FgAbelianGroup free(std::size_t rank);
  static FgAbelianGroup cyclic(const Integer& order);  // order 0 means Z
  /// Any list of cyclic orders (0 = Z, 1 = trivial) normalized to canonical form.
  static FgAbelianGroup from_cyclic_orders(const IntVector& orders);
  /// Throws InvalidInput unless torsion is already a canonical chain.
  static FgAbelianGroup canonical(std::size_t free_rank, const IntVector& torsion);

  std::size_t free_rank() const { return free_rank_; }
  const IntVector& torsion() const { return torsion_; }
  std::size_t generator_count() const { return free_rank_ + torsion_.size(); }

  /// Order of canonical generator i; 0 for free generators.
  Integer generator_order(std::size_t i) const;
  bool is_torsion_generator(std::size_t i) const { return i >= free_rank_; }
  bool is_trivial() const { return generator_count() == 0; }
  bool is_finite() const { return free_rank_ == 0; }
  bool is_free() const { return torsion_.empty(); }
  /// Group order, or nullopt when infinite.
  std::optional<Integer> order() const;
  /// Largest invariant factor; 1 for the trivial group, 0 when not finite.
  Integer exponent() const;

  /// Square diagonal matrix of generator orders (zeros on free generators).
  IntMatrix relation_matrix() const;
  /// Only the torsion columns of relation_matrix().
  IntMatrix torsion_relations() const;

  /// Reduce torsion coordinates into [0, d).
  IntVector reduce(const IntVector& x) const;
  bool equal_elements(const IntVector& x, const IntVector& y) const;
  bool is_zero_element(const IntVector& x) const;

  std::string to_string() const;

  friend bool operator==(const FgAbelianGroup& a, const FgAbelianGroup& b) {
    return a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_;
  }
  friend bool operator!=(const FgAbelianGroup& a, const FgAbelianGroup& b) { return !(a == b); }

 private:
  std::size_t free_rank_ = 0;
  IntVector torsion_;
};

/// Cokernel Z^rows / im(relations) in canonical form, together with the
/// coordinate change: projection maps Z^rows onto canonical coordinates and
/// section lifts each canonical generator back to Z^rows.
struct Presentation {
  FgAbelianGroup group;
  IntMatrix projection;  // generator_count x rows
  IntMatrix section;     // rows x generator_count
};

Presentation present_cokernel(const IntMatrix& relations);

/// coker(M : Z^cols -> Z^rows) in canonical form.
FgAbelianGroup group_from_matrix(const IntMatrix& m);

}  // namespace kclass
