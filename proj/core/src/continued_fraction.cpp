#include "kclass/continued_fraction.hpp"

#include "kclass/error.hpp"

#include <map>
#include <utility>

namespace kclass {

ContinuedFraction cf_expansion(const QuadraticIrrational& x) {
  // Write x = (P + sqrt(D)) / Q with Q | D - P^2; the complete quotients
  // then stay of that shape and the reduced ones repeat.
  Integer a = x.a(), c = x.c();
  const Integer& b = x.b();
  if (b < 0) {
    a = -a;
    c = -c;
  }
  const Integer abs_c = abs(c);
  const Integer D = b * b * x.d() * c * c;
  Integer P = a * abs_c, Q = c * abs_c;
  const Integer s = isqrt(D);

  ContinuedFraction out;
  IntVector terms;
  std::map<std::pair<Integer, Integer>, std::size_t> seen;
  for (;;) {
    auto [it, fresh] = seen.emplace(std::make_pair(P, Q), terms.size());
    if (!fresh) {
      out.preperiod.assign(terms.begin(), terms.begin() + static_cast<long>(it->second));
      out.period.assign(terms.begin() + static_cast<long>(it->second), terms.end());
      return out;
    }
    const Integer t = Q > 0 ? floor_div(P + s, Q) : Integer(-(floor_div(P + s, -Q) + 1));
    terms.push_back(t);
    P = t * Q - P;
    Q = (D - P * P) / Q;
  }
}

IntMatrix cf_matrix(const IntVector& terms) {
  IntMatrix m = IntMatrix::identity(2);
  for (const Integer& t : terms) {
    IntMatrix step{{0, 1}, {1, 0}};
    step(0, 0) = t;
    m = m * step;
  }
  return m;
}

IntMatrix unimodular_inverse2(const IntMatrix& w) {
  const Integer det = w.determinant();
  if (abs(det) != 1) throw InvalidInput("matrix is not invertible over Z");
  IntMatrix inv(2, 2);
  inv(0, 0) = det * w(1, 1);
  inv(0, 1) = -det * w(0, 1);
  inv(1, 0) = -det * w(1, 0);
  inv(1, 1) = det * w(0, 0);
  return inv;
}

QuadraticIrrational cf_value(const ContinuedFraction& cf) {
  if (cf.period.empty()) throw InvalidInput("continued fraction has an empty period");
  // purely periodic part w satisfies w = M(w): r w^2 + (s - p) w - q = 0, w > 1
  const IntMatrix m = cf_matrix(cf.period);
  const Integer &p = m(0, 0), &q = m(0, 1), &r = m(1, 0), &s = m(1, 1);
  const Integer disc = (s - p) * (s - p) + 4 * q * r;
  const QuadraticIrrational tail(p - s, 1, disc, 2 * r);
  return tail.mobius(cf_matrix(cf.preperiod));
}

namespace {

bool rotation_offset(const IntVector& x, const IntVector& y, std::size_t& offset) {
  if (x.size() != y.size()) return false;
  const std::size_t n = x.size();
  for (std::size_t k = 0; k < n; ++k) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = x[(i + k) % n] == y[i];
    if (ok) {
      offset = k;
      return true;
    }
  }
  return false;
}

}  // namespace

std::optional<IntMatrix> mobius_equivalence(const QuadraticIrrational& from,
                                            const QuadraticIrrational& to) {
  const ContinuedFraction f = cf_expansion(from), t = cf_expansion(to);
  std::size_t k = 0;
  if (!rotation_offset(f.period, t.period, k)) return std::nullopt;
  // from = A(w), w = R(w_k) with w_k the tail of `to`, to = B(w_k)
  const IntMatrix a = cf_matrix(f.preperiod);
  const IntVector head(f.period.begin(), f.period.begin() + static_cast<long>(k));
  const IntMatrix r = cf_matrix(head);
  const IntMatrix b = cf_matrix(t.preperiod);
  return b * unimodular_inverse2(r) * unimodular_inverse2(a);
}

bool sturmian_equivalent(const QuadraticIrrational& alpha, const QuadraticIrrational& beta) {
  return mobius_equivalence(alpha, beta).has_value();
}

IntMatrix stabilizer_generator(const QuadraticIrrational& x) {
  const ContinuedFraction cf = cf_expansion(x);
  const IntMatrix a = cf_matrix(cf.preperiod);
  return a * cf_matrix(cf.period) * unimodular_inverse2(a);
}

}  // namespace kclass
