#include "kclass/quadratic.hpp"

#include "kclass/error.hpp"

#include <cmath>
#include <regex>
#include <sstream>

namespace kclass {

Integer isqrt(const Integer& n) {
  if (n < 0) throw InvalidInput("isqrt of a negative number");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_perfect_square(const Integer& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

int surd_sign(const Integer& p, const Integer& q, const Integer& radicand) {
  const int sp = sgn(p);
  const int sq = radicand == 0 ? 0 : sgn(q);
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  // opposite signs: compare p^2 with q^2 * radicand
  const int cmp_ = cmp(Integer(p * p), Integer(q * q * radicand));
  return cmp_ > 0 ? sp : (cmp_ < 0 ? sq : 0);
}

QuadraticIrrational::QuadraticIrrational(Integer a, Integer b, Integer d, Integer c)
    : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)), c_(std::move(c)) {
  if (c_ == 0) throw InvalidInput("quadratic irrational with zero denominator");
  if (d_ < 0) throw InvalidInput("quadratic irrational with negative radicand");
  // Square factors are pulled out by trial division up to a cutoff; equality
  // does not rely on d being squarefree, so huge radicands stay cheap.
  for (Integer k = 2; k <= 100000 && k * k <= d_; ++k) {
    const Integer sq = k * k;
    while (d_ % sq == 0) {
      d_ /= sq;
      b_ *= k;
    }
  }
  if (b_ == 0 || is_perfect_square(d_)) throw InvalidInput("value is rational");
  if (c_ < 0) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
  }
  Integer g = gcd(gcd(a_, b_), c_);
  if (g > 1) {
    a_ /= g;
    b_ /= g;
    c_ /= g;
  }
}

QuadraticIrrational QuadraticIrrational::parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  static const std::regex form(R"(^\(([+-]?\d+)([+-])(\d+)\*sqrt\((\d+)\)\)(?:/([+-]?\d+))?$)");
  std::smatch m;
  if (!std::regex_match(s, m, form))
    throw ParseError("expected a quadratic irrational of the form (a+b*sqrt(d))/c, got '" +
                     text + "'");
  Integer a(m[1].str()), b(m[3].str()), d(m[4].str());
  Integer c = m[5].matched ? Integer(m[5].str()) : Integer(1);
  if (m[2].str() == "-") b = -b;
  try {
    return QuadraticIrrational(a, b, d, c);
  } catch (const InvalidInput& e) {
    throw ParseError(std::string("'") + text + "': " + e.what());
  }
}

bool operator==(const QuadraticIrrational& x, const QuadraticIrrational& y) {
  // equal rational parts and equal signed squares of the irrational parts
  return x.a_ * y.c_ == y.a_ * x.c_ && sgn(x.b_) == sgn(y.b_) &&
         x.b_ * x.b_ * x.d_ * y.c_ * y.c_ == y.b_ * y.b_ * y.d_ * x.c_ * x.c_;
}

bool same_field(const QuadraticIrrational& x, const QuadraticIrrational& y) {
  return is_perfect_square(Integer(x.d() * y.d()));
}

int QuadraticIrrational::sign() const { return surd_sign(a_, b_, d_); }

int QuadraticIrrational::affine_sign(const Integer& u, const Integer& v) const {
  // u + v (a + b sqrt d) / c, with c > 0
  return surd_sign(u * c_ + v * a_, v * b_, d_);
}

Integer QuadraticIrrational::floor() const {
  // b sqrt d = sign(b) sqrt(b^2 d); bracket it between consecutive integers
  const Integer r = b_ * b_ * d_;
  Integer s = isqrt(r);
  const Integer lo = b_ > 0 ? Integer(a_ + s) : Integer(a_ - s - 1);
  // lo < a + b sqrt d < lo + 1 since the radicand is not a square
  return floor_div(lo, c_);
}

QuadraticIrrational QuadraticIrrational::conjugate() const {
  return QuadraticIrrational(a_, -b_, d_, c_);
}

QuadraticIrrational QuadraticIrrational::mobius(const IntMatrix& w) const {
  if (w.rows() != 2 || w.cols() != 2) throw InvalidInput("Mobius map must be 2x2");
  if (w.determinant() == 0) throw InvalidInput("Mobius map is singular");
  const Integer &p = w(0, 0), &q = w(0, 1), &r = w(1, 0), &s = w(1, 1);
  // numerator n0 + n1 sqrt d, denominator x + y sqrt d
  const Integer n0 = p * a_ + q * c_, n1 = p * b_;
  const Integer x = r * a_ + s * c_, y = r * b_;
  const Integer norm = x * x - y * y * d_;
  return QuadraticIrrational(n0 * x - n1 * y * d_, n1 * x - n0 * y, d_, norm);
}

double QuadraticIrrational::to_double() const {
  return (a_.get_d() + b_.get_d() * std::sqrt(d_.get_d())) / c_.get_d();
}

std::string QuadraticIrrational::to_string() const {
  std::ostringstream os;
  os << '(' << a_ << (b_ < 0 ? '-' : '+') << abs(b_) << "*sqrt(" << d_ << "))/" << c_;
  return os.str();
}

}  // namespace kclass
