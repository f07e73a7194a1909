#include "kclass/int_matrix.hpp"

#include "kclass/error.hpp"

#include <ostream>
#include <sstream>
#include <utility>

namespace kclass {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidInput("ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const IntVector& entries) {
  IntMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols_if_empty) {
  IntMatrix m(rows.size(), rows.empty() ? cols_if_empty : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw InvalidInput("ragged matrix rows");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::column_vector(const IntVector& v) {
  IntMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

IntMatrix IntMatrix::hstack(const IntMatrix& left, const IntMatrix& right) {
  if (left.rows_ != right.rows_) throw InvalidInput("hstack: row counts differ");
  IntMatrix m(left.rows_, left.cols_ + right.cols_);
  for (std::size_t i = 0; i < m.rows_; ++i) {
    for (std::size_t j = 0; j < left.cols_; ++j) m(i, j) = left(i, j);
    for (std::size_t j = 0; j < right.cols_; ++j) m(i, left.cols_ + j) = right(i, j);
  }
  return m;
}

IntMatrix IntMatrix::vstack(const IntMatrix& top, const IntMatrix& bottom) {
  if (top.cols_ != bottom.cols_) throw InvalidInput("vstack: column counts differ");
  IntMatrix m(top.rows_ + bottom.rows_, top.cols_);
  for (std::size_t j = 0; j < m.cols_; ++j) {
    for (std::size_t i = 0; i < top.rows_; ++i) m(i, j) = top(i, j);
    for (std::size_t i = 0; i < bottom.rows_; ++i) m(top.rows_ + i, j) = bottom(i, j);
  }
  return m;
}

bool IntMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

bool IntMatrix::is_nonnegative() const {
  for (const auto& x : data_)
    if (x < 0) return false;
  return true;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

void IntMatrix::set_column(std::size_t c, const IntVector& v) {
  if (v.size() != rows_) throw InvalidInput("set_column: length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = v[i];
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::block(std::size_t r0, std::size_t c0, std::size_t nrows,
                           std::size_t ncols) const {
  if (r0 + nrows > rows_ || c0 + ncols > cols_) throw InvalidInput("block out of range");
  IntMatrix b(nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i)
    for (std::size_t j = 0; j < ncols; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

IntMatrix IntMatrix::select(const std::vector<std::size_t>& rows,
                            const std::vector<std::size_t>& cols) const {
  IntMatrix s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
  return s;
}

IntMatrix IntMatrix::pow(unsigned exponent) const {
  if (!is_square()) throw InvalidInput("pow of a non-square matrix");
  IntMatrix result = identity(rows_);
  IntMatrix base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1u;
    if (exponent > 0) base = base * base;
  }
  return result;
}

// Bareiss fraction-free elimination.
Integer IntMatrix::determinant() const {
  if (!is_square()) throw InvalidInput("determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix a = *this;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t IntMatrix::rank() const {
  IntMatrix a = *this;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t p = r;
    while (p < rows_ && a(p, c) == 0) ++p;
    if (p == rows_) continue;
    a.swap_rows(r, p);
    for (std::size_t i = r + 1; i < rows_; ++i) {
      if (a(i, c) == 0) continue;
      Integer f = a(i, c), g = a(r, c);
      for (std::size_t j = c; j < cols_; ++j) a(i, j) = a(i, j) * g - a(r, j) * f;
    }
    ++r;
  }
  return r;
}

std::size_t IntMatrix::rank_mod(const Integer& prime) const {
  IntMatrix a = *this;
  for (auto& x : a.data_) x = floor_mod(x, prime);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t p = r;
    while (p < rows_ && a(p, c) == 0) ++p;
    if (p == rows_) continue;
    a.swap_rows(r, p);
    Integer inv;
    mpz_invert(inv.get_mpz_t(), a(r, c).get_mpz_t(), prime.get_mpz_t());
    for (std::size_t i = r + 1; i < rows_; ++i) {
      if (a(i, c) == 0) continue;
      Integer f = floor_mod(a(i, c) * inv, prime);
      for (std::size_t j = c; j < cols_; ++j) a(i, j) = floor_mod(a(i, j) - f * a(r, j), prime);
    }
    ++r;
  }
  return r;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw InvalidInput("matrix product: inner dimensions differ");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

IntVector operator*(const IntMatrix& a, const IntVector& v) {
  if (a.cols_ != v.size()) throw InvalidInput("matrix-vector product: length mismatch");
  IntVector out(a.rows_, Integer(0));
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
  return out;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidInput("matrix sum: shape mismatch");
  IntMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw InvalidInput("matrix difference: shape mismatch");
  IntMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

IntMatrix operator-(const IntMatrix& a) {
  IntMatrix c = a;
  for (auto& x : c.data_) x = -x;
  return c;
}

IntMatrix operator*(const Integer& k, const IntMatrix& a) {
  IntMatrix c = a;
  for (auto& x : c.data_) x *= k;
  return c;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

IntVector operator+(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw InvalidInput("vector sum: length mismatch");
  IntVector c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return c;
}

IntVector operator-(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw InvalidInput("vector difference: length mismatch");
  IntVector c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
  return c;
}

IntVector operator-(const IntVector& v) {
  IntVector c = v;
  for (Integer& x : c) x = -x;
  return c;
}

IntVector operator*(const Integer& k, const IntVector& v) {
  IntVector c = v;
  for (auto& x : c) x *= k;
  return c;
}

bool is_zero(const IntVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

IntVector unit_vector(std::size_t n, std::size_t i) {
  IntVector v(n, Integer(0));
  v.at(i) = 1;
  return v;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer floor_mod(const Integer& a, const Integer& b) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace kclass
