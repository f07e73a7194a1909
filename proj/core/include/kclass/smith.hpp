#pragma once

#include "kclass/int_matrix.hpp"

#include <optional>

namespace kclass {

/// U * M * V = D with U, V unimodular and D diagonal, d1 | d2 | ..., di >= 0.
/// The inverses of U and V are carried along so callers can move between
/// the original and the diagonal coordinates without re-solving.
struct SmithDecomposition {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
  IntMatrix u_inv;
  IntMatrix v_inv;
  std::size_t rank = 0;

  /// The min(rows, cols) diagonal entries of d.
  IntVector invariant_factors() const;
};

/// Smallest-pivot elimination with full reduction of pivot rows and columns;
/// divisibility is restored by folding offending rows into the pivot row.
SmithDecomposition smith_normal_form(const IntMatrix& m);

/// Some integer x with a * x = b, if one exists.
std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b);

/// Solves a * x = b for many right-hand sides with one Smith decomposition.
class IntegerSolver {
 public:
  explicit IntegerSolver(const IntMatrix& a);
  std::optional<IntVector> solve(const IntVector& b) const;

 private:
  SmithDecomposition smith_;
};

/// Columns form a Z-basis of {x : a * x = 0}.
IntMatrix integer_kernel(const IntMatrix& a);

/// True iff v lies in the Z-span of the columns of generators.
bool in_column_span(const IntMatrix& generators, const IntVector& v);

}  // namespace kclass
