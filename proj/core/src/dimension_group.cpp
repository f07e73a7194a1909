#include "kclass/dimension_group.hpp"

#include "kclass/error.hpp"
#include "kclass/smith.hpp"

#include <set>

namespace kclass {

bool is_primitive(const IntMatrix& a) {
  if (!a.is_square() || a.rows() == 0 || !a.is_nonnegative()) return false;
  const std::size_t n = a.rows();
  // Wielandt: primitive iff A^((n-1)^2 + 1) > 0; track the zero pattern only
  std::vector<std::vector<bool>> base(n, std::vector<bool>(n)), cur;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) base[i][j] = a(i, j) > 0;
  cur = base;
  const std::size_t steps = (n - 1) * (n - 1) + 1;
  for (std::size_t s = 1; s < steps; ++s) {
    std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (cur[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (base[k][j]) next[i][j] = true;
    cur = std::move(next);
  }
  for (const auto& row : cur)
    for (bool b : row)
      if (!b) return false;
  return true;
}

StationaryDimensionGroup::StationaryDimensionGroup(IntMatrix matrix) : matrix_(std::move(matrix)) {
  if (!matrix_.is_square() || matrix_.rows() == 0)
    throw InvalidInput("dimension group matrix must be square and nonempty");
  ordered_ = matrix_.is_nonnegative();
  primitive_ = ordered_ && is_primitive(matrix_);
}

namespace {

IntVector at_stage(const DGElement& x, std::size_t stage, const IntMatrix& a) {
  IntVector v = x.vector;
  for (std::size_t k = x.stage; k < stage; ++k) v = a * v;
  return v;
}

void check_size(const DGElement& x, const StationaryDimensionGroup& g) {
  if (x.vector.size() != g.size())
    throw InvalidInput("dimension group element has the wrong length");
}

}  // namespace

bool dg_equal(const DGElement& x, const DGElement& y, const StationaryDimensionGroup& g) {
  check_size(x, g);
  check_size(y, g);
  const std::size_t stage = std::max(x.stage, y.stage);
  IntVector diff = at_stage(x, stage, g.matrix()) - at_stage(y, stage, g.matrix());
  // ker A^k stabilizes by k = n
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (is_zero(diff)) return true;
    diff = g.matrix() * diff;
  }
  return is_zero(diff);
}

bool dg_is_zero(const DGElement& x, const StationaryDimensionGroup& g) {
  return dg_equal(x, DGElement{0, IntVector(g.size(), Integer(0))}, g);
}

DGElement dg_minimal_stage(const DGElement& x, const StationaryDimensionGroup& g) {
  check_size(x, g);
  const std::size_t n = g.size();
  const IntMatrix& a = g.matrix();
  if (dg_is_zero(x, g)) return DGElement{0, IntVector(n, Integer(0))};
  const IntMatrix an = a.pow(static_cast<unsigned>(n));
  const IntVector target = an * x.vector;
  // (s, u) ~ (k, v) iff A^n (A^(k-s) u - v) = 0
  for (std::size_t s = 0; s < x.stage; ++s) {
    const IntMatrix lhs = an * a.pow(static_cast<unsigned>(x.stage - s));
    if (auto u = solve_integer(lhs, target)) return DGElement{s, *u};
  }
  return x;
}

std::string to_string(Positivity p) {
  switch (p) {
    case Positivity::positive: return "positive";
    case Positivity::negative: return "negative";
    case Positivity::zero: return "zero";
    case Positivity::infinitesimal: return "infinitesimal";
    case Positivity::unknown: return "unknown";
  }
  return "unknown";
}

Positivity dg_positive(const DGElement& x, const StationaryDimensionGroup& g,
                       unsigned iterations) {
  if (!g.primitive()) throw InvalidInput("positivity needs an ordered primitive matrix");
  check_size(x, g);
  if (dg_is_zero(x, g)) return Positivity::zero;
  const IntMatrix& a = g.matrix();

  if (g.size() == 2) {
    // left Perron vector (c, lambda - a) with lambda = (t + sqrt(D)) / 2
    const Integer t = a(0, 0) + a(1, 1);
    const Integer disc = t * t - 4 * a.determinant();
    const Integer& c = a(1, 0);
    const Integer& v0 = x.vector[0];
    const Integer& v1 = x.vector[1];
    const int s = surd_sign(2 * c * v0 + (t - 2 * a(0, 0)) * v1, v1, disc);
    if (s > 0) return Positivity::positive;
    if (s < 0) return Positivity::negative;
    return Positivity::infinitesimal;
  }

  IntVector v = x.vector;
  for (unsigned k = 0; k <= iterations; ++k) {
    bool nonneg = true, nonpos = true;
    for (const Integer& e : v) {
      if (e < 0) nonneg = false;
      if (e > 0) nonpos = false;
    }
    if (nonneg && !nonpos) return Positivity::positive;
    if (nonpos && !nonneg) return Positivity::negative;
    v = a * v;
  }
  return Positivity::unknown;
}

std::optional<QuadraticIrrational> perron_slope(const IntMatrix& a) {
  if (a.rows() != 2 || !is_primitive(a)) return std::nullopt;
  const Integer t = a(0, 0) + a(1, 1);
  const Integer disc = t * t - 4 * a.determinant();
  if (is_perfect_square(disc)) return std::nullopt;
  return QuadraticIrrational(a(1, 1) - a(0, 0), 1, disc, 2 * a(1, 0));
}

bool is_rank2_unimodular_primitive(const IntMatrix& a) {
  return a.rows() == 2 && a.cols() == 2 && abs(a.determinant()) == 1 && perron_slope(a);
}

namespace {

// w with theta1 = w(theta2) becomes M with (1, theta2) M = k (1, theta1), k > 0.
IntMatrix functional_map(const IntMatrix& w, const QuadraticIrrational& theta2) {
  IntMatrix m{{0, 0}, {0, 0}};
  m(0, 0) = w(1, 1);
  m(0, 1) = w(0, 1);
  m(1, 0) = w(1, 0);
  m(1, 1) = w(0, 0);
  if (theta2.affine_sign(w(1, 1), w(1, 0)) < 0) m = -m;
  return m;
}

void require_rank2(const IntMatrix& a) {
  if (!is_rank2_unimodular_primitive(a))
    throw Unsupported("exact order isomorphisms need a 2x2 primitive matrix with |det| = 1");
}

}  // namespace

int rank2_functional_sign(const IntMatrix& a, const IntVector& v) {
  const auto theta = perron_slope(a);
  if (!theta || v.size() != 2) throw InvalidInput("rank-2 functional needs a primitive 2x2 matrix");
  return theta->affine_sign(v[0], v[1]);
}

std::optional<IntMatrix> rank2_order_isomorphism(const IntMatrix& a1, const IntMatrix& a2) {
  require_rank2(a1);
  require_rank2(a2);
  const QuadraticIrrational t1 = *perron_slope(a1), t2 = *perron_slope(a2);
  const auto w = mobius_equivalence(t2, t1);
  if (!w) return std::nullopt;
  return functional_map(*w, t2);
}

IntMatrix rank2_positive_automorphism(const IntMatrix& a) {
  require_rank2(a);
  const QuadraticIrrational t = *perron_slope(a);
  return functional_map(stabilizer_generator(t), t);
}

std::size_t eventual_rank(const IntMatrix& a) {
  return a.pow(static_cast<unsigned>(a.rows())).rank();
}

namespace {

// Primes below a trial-division limit; anything left over is ignored, which
// only means fewer obstructions get checked.
void collect_small_primes(Integer x, std::set<Integer>& out) {
  x = abs(x);
  Integer p = 2;
  for (; p <= 100000 && p * p <= x; ++p) {
    if (x % p != 0) continue;
    out.insert(p);
    while (x % p == 0) x /= p;
  }
  if (x > 1 && p * p > x) out.insert(x);
}

}  // namespace

std::optional<std::string> dg_group_obstruction(const IntMatrix& a1, const IntMatrix& a2) {
  const std::size_t r1 = eventual_rank(a1), r2 = eventual_rank(a2);
  if (r1 != r2)
    return "rational ranks differ (" + std::to_string(r1) + " vs " + std::to_string(r2) + ")";
  const IntMatrix p1 = a1.pow(static_cast<unsigned>(a1.rows()));
  const IntMatrix p2 = a2.pow(static_cast<unsigned>(a2.rows()));
  std::set<Integer> primes;
  for (const IntMatrix* p : {&p1, &p2}) {
    const IntVector f = smith_normal_form(*p).invariant_factors();
    for (const Integer& d : f)
      if (d != 0) collect_small_primes(d, primes);
  }
  for (const Integer& q : primes) {
    // DG / q DG = lim (F_q^n, A), of dimension rank (A mod q)^n
    const std::size_t d1 = p1.rank_mod(q), d2 = p2.rank_mod(q);
    if (d1 != d2)
      return "DG/" + q.get_str() + "DG has dimension " + std::to_string(d1) + " vs " +
             std::to_string(d2);
  }
  return std::nullopt;
}

}  // namespace kclass
