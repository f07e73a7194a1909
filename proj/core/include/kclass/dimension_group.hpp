#pragma once

#include "kclass/continued_fraction.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kclass {

/// DG(A) = lim (Z^n --A--> Z^n --A--> ...), acting on column vectors.
class StationaryDimensionGroup {
 public:
  /// Throws InvalidInput unless the matrix is square and nonempty.
  explicit StationaryDimensionGroup(IntMatrix matrix);

  const IntMatrix& matrix() const { return matrix_; }
  std::size_t size() const { return matrix_.rows(); }
  /// All entries nonnegative, so the limit carries the induced order.
  bool ordered() const { return ordered_; }
  /// Some power is strictly positive.
  bool primitive() const { return primitive_; }

 private:
  IntMatrix matrix_;
  bool ordered_ = false;
  bool primitive_ = false;
};

bool is_primitive(const IntMatrix& a);

/// The class of `vector` in the stage-th copy of Z^n; (k, v) ~ (k + 1, A v).
struct DGElement {
  std::size_t stage = 0;
  IntVector vector;
};

bool dg_equal(const DGElement& x, const DGElement& y, const StationaryDimensionGroup& g);
bool dg_is_zero(const DGElement& x, const StationaryDimensionGroup& g);
/// Same class, represented at the smallest stage where it appears.
DGElement dg_minimal_stage(const DGElement& x, const StationaryDimensionGroup& g);

enum class Positivity { positive, negative, zero, infinitesimal, unknown };

std::string to_string(Positivity p);

inline constexpr unsigned kDefaultPositivityIterations = 64;

/// Order of x in DG(A) for ordered primitive A. Exact for 2x2 matrices; other
/// sizes look for a sign-definite A^k v with k <= iterations and report
/// unknown when none shows up. `infinitesimal` means nonzero but neither
/// positive nor negative (only possible when the Perron value is rational).
/// Throws InvalidInput if the group is not ordered and primitive.
Positivity dg_positive(const DGElement& x, const StationaryDimensionGroup& g,
                       unsigned iterations = kDefaultPositivityIterations);

/// For a primitive 2x2 A with irrational Perron value lambda: theta with
/// (1, theta) a left Perron eigenvector, i.e. theta = (lambda - a11) / a21.
std::optional<QuadraticIrrational> perron_slope(const IntMatrix& a);

/// For 2x2 primitive matrices with |det| = 1 and irrational Perron value the
/// limit is Z^2 itself, ordered by the sign of the left Perron functional.
bool is_rank2_unimodular_primitive(const IntMatrix& a);

/// Order isomorphism DG(a1) -> DG(a2) on stage-0 coordinates, if one exists.
/// Throws Unsupported unless both matrices pass is_rank2_unimodular_primitive.
std::optional<IntMatrix> rank2_order_isomorphism(const IntMatrix& a1, const IntMatrix& a2);
/// Generator of the (infinite cyclic) group of order automorphisms of DG(a).
IntMatrix rank2_positive_automorphism(const IntMatrix& a);
/// Sign of the left Perron functional on v; v is positive in DG(a) iff this is +1.
int rank2_functional_sign(const IntMatrix& a, const IntVector& v);

/// rank of A^n over Q: the rank of DG(A) (x) Q.
std::size_t eventual_rank(const IntMatrix& a);

/// A reason DG(a1) and DG(a2) cannot be isomorphic as abstract groups
/// (rational rank or dim over F_q of DG / q DG), if one is found.
std::optional<std::string> dg_group_obstruction(const IntMatrix& a1, const IntMatrix& a2);

}  // namespace kclass
