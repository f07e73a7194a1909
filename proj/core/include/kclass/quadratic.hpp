#pragma once

#include "kclass/int_matrix.hpp"

#include <string>

namespace kclass {

Integer isqrt(const Integer& n);
bool is_perfect_square(const Integer& n);

/// Sign of p + q*sqrt(radicand) for radicand >= 0, computed exactly.
int surd_sign(const Integer& p, const Integer& q, const Integer& radicand);

/// Real quadratic irrational (a + b*sqrt(d)) / c.
///
/// Normalized so that c > 0 and gcd(a, b, c) = 1, with square factors of d
/// removed (exhaustively for d below 10^10).
class QuadraticIrrational {
 public:
  /// Throws InvalidInput if c == 0, d < 0 or the value is rational.
  QuadraticIrrational(Integer a, Integer b, Integer d, Integer c);

  /// Parses "(a+b*sqrt(d))/c"; whitespace is ignored, the "/c" part is
  /// optional and b may carry a minus sign. Throws ParseError.
  static QuadraticIrrational parse(const std::string& text);

  const Integer& a() const { return a_; }
  const Integer& b() const { return b_; }
  const Integer& d() const { return d_; }
  const Integer& c() const { return c_; }

  int sign() const;
  /// Sign of u + v * this.
  int affine_sign(const Integer& u, const Integer& v) const;
  Integer floor() const;
  QuadraticIrrational conjugate() const;
  /// (p x + q) / (r x + s) for w = [[p, q], [r, s]]; throws if det w = 0.
  QuadraticIrrational mobius(const IntMatrix& w) const;

  double to_double() const;
  std::string to_string() const;

  friend bool operator==(const QuadraticIrrational& x, const QuadraticIrrational& y);
  friend bool operator!=(const QuadraticIrrational& x, const QuadraticIrrational& y) {
    return !(x == y);
  }

 private:
  Integer a_, b_, d_, c_;
};

/// Both numbers lie in the same quadratic field.
bool same_field(const QuadraticIrrational& x, const QuadraticIrrational& y);

}  // namespace kclass
