#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

namespace kclass {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;

/// Dense row-major matrix of arbitrary-precision integers.
///
/// Zero-sized dimensions are legal and meaningful: a 2x0 matrix presents
/// Z^2 with no relations, a 0x3 matrix is the zero map Z^3 -> 0.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(const IntVector& entries);
  /// Throws InvalidInput when the rows are ragged.
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols_if_empty = 0);
  static IntMatrix column_vector(const IntVector& v);
  static IntMatrix hstack(const IntMatrix& left, const IntMatrix& right);
  static IntMatrix vstack(const IntMatrix& top, const IntMatrix& bottom);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool is_zero() const;
  bool is_nonnegative() const;

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  void set_column(std::size_t c, const IntVector& v);

  IntMatrix transposed() const;
  IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const;
  /// Rows and columns picked by index, in the given order.
  IntMatrix select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  IntMatrix pow(unsigned exponent) const;

  Integer determinant() const;
  std::size_t rank() const;
  /// Rank of the reduction modulo a prime.
  std::size_t rank_mod(const Integer& prime) const;

  // Elementary operations, used by the normal-form code.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k);
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& k);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  friend bool operator==(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntVector operator*(const IntMatrix& a, const IntVector& v);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a);
  friend IntMatrix operator*(const Integer& k, const IntMatrix& a);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

IntVector operator+(const IntVector& a, const IntVector& b);
IntVector operator-(const IntVector& a, const IntVector& b);
IntVector operator-(const IntVector& v);
IntVector operator*(const Integer& k, const IntVector& v);
bool is_zero(const IntVector& v);
IntVector unit_vector(std::size_t n, std::size_t i);

/// Floor division and the matching nonnegative remainder.
Integer floor_div(const Integer& a, const Integer& b);
Integer floor_mod(const Integer& a, const Integer& b);

}  // namespace kclass
