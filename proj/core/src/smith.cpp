#include "kclass/smith.hpp"

#include <algorithm>

namespace kclass {

namespace {

struct Elimination {
  IntMatrix d, u, u_inv, v, v_inv;

  // Row op on D is mirrored on U; its inverse acts on the columns of U^-1.
  void swap_rows(std::size_t a, std::size_t b) {
    d.swap_rows(a, b);
    u.swap_rows(a, b);
    u_inv.swap_cols(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    d.swap_cols(a, b);
    v.swap_cols(a, b);
    v_inv.swap_rows(a, b);
  }
  // row dst += k * row src
  void add_row(std::size_t dst, std::size_t src, const Integer& k) {
    d.add_row_multiple(dst, src, k);
    u.add_row_multiple(dst, src, k);
    u_inv.add_col_multiple(src, dst, -k);
  }
  // col dst += k * col src
  void add_col(std::size_t dst, std::size_t src, const Integer& k) {
    d.add_col_multiple(dst, src, k);
    v.add_col_multiple(dst, src, k);
    v_inv.add_row_multiple(src, dst, -k);
  }
  void negate_row(std::size_t r) {
    d.negate_row(r);
    u.negate_row(r);
    u_inv.negate_col(r);
  }
};

}  // namespace

IntVector SmithDecomposition::invariant_factors() const {
  IntVector out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
  return out;
}

SmithDecomposition smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  Elimination e{m, IntMatrix::identity(rows), IntMatrix::identity(rows),
                IntMatrix::identity(cols), IntMatrix::identity(cols)};
  std::size_t rank = 0;

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    bool found_any = false;
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          const Integer& x = e.d(i, j);
          if (x == 0) continue;
          if (pr == rows || abs(x) < abs(e.d(pr, pc))) {
            pr = i;
            pc = j;
          }
        }
      if (pr == rows) break;
      found_any = true;
      e.swap_rows(t, pr);
      e.swap_cols(t, pc);

      const Integer pivot = e.d(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (e.d(i, t) == 0) continue;
        Integer q = e.d(i, t) / pivot;  // truncating; remainder |r| < |pivot|
        e.add_row(i, t, -q);
        if (e.d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (e.d(t, j) == 0) continue;
        Integer q = e.d(t, j) / pivot;
        e.add_col(j, t, -q);
        if (e.d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot row and column are clear; enforce pivot | every trailing entry.
      std::size_t bad_row = rows;
      for (std::size_t i = t + 1; i < rows && bad_row == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (e.d(i, j) % pivot != 0) {
            bad_row = i;
            break;
          }
      if (bad_row == rows) break;
      e.add_row(t, bad_row, Integer(1));
    }
    if (!found_any) break;
    if (e.d(t, t) < 0) e.negate_row(t);
    ++rank;
  }

  return SmithDecomposition{std::move(e.u), std::move(e.d), std::move(e.v),
                            std::move(e.u_inv), std::move(e.v_inv), rank};
}

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
  return IntegerSolver(a).solve(b);
}

IntegerSolver::IntegerSolver(const IntMatrix& a) : smith_(smith_normal_form(a)) {}

std::optional<IntVector> IntegerSolver::solve(const IntVector& b) const {
  const SmithDecomposition& s = smith_;
  if (b.size() != s.d.rows()) return std::nullopt;
  const IntVector ub = s.u * b;
  IntVector z(s.d.cols(), Integer(0));
  for (std::size_t i = 0; i < s.d.rows(); ++i) {
    if (i < s.rank) {
      const Integer& di = s.d(i, i);
      if (ub[i] % di != 0) return std::nullopt;
      z[i] = ub[i] / di;
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return s.v * z;
}

IntMatrix integer_kernel(const IntMatrix& a) {
  const SmithDecomposition s = smith_normal_form(a);
  return s.v.block(0, s.rank, a.cols(), a.cols() - s.rank);
}

bool in_column_span(const IntMatrix& generators, const IntVector& v) {
  return solve_integer(generators, v).has_value();
}

}  // namespace kclass
