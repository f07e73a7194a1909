#pragma once

#include "kclass/quadratic.hpp"

#include <optional>

namespace kclass {

/// Eventually periodic expansion [preperiod..., (period...)]. The first
/// preperiod term is the integer part and may be negative or zero.
struct ContinuedFraction {
  IntVector preperiod;
  IntVector period;

  friend bool operator==(const ContinuedFraction& x, const ContinuedFraction& y) {
    return x.preperiod == y.preperiod && x.period == y.period;
  }
};

ContinuedFraction cf_expansion(const QuadraticIrrational& x);
/// Inverse of cf_expansion. Throws InvalidInput on an empty period.
QuadraticIrrational cf_value(const ContinuedFraction& cf);

/// Product of [[t, 1], [1, 0]] over the terms: the Mobius map
/// y |-> [t0; t1, ..., tk, y].
IntMatrix cf_matrix(const IntVector& terms);

/// Inverse of a 2x2 integer matrix with determinant +-1.
IntMatrix unimodular_inverse2(const IntMatrix& w);

/// Some w in GL(2, Z) with to = w(from), if the two numbers are equivalent
/// (equivalently: their expansions share a tail).
std::optional<IntMatrix> mobius_equivalence(const QuadraticIrrational& from,
                                            const QuadraticIrrational& to);

/// Z + alpha Z and Z + beta Z are isomorphic as ordered groups.
bool sturmian_equivalent(const QuadraticIrrational& alpha, const QuadraticIrrational& beta);

/// Generator, up to sign, of the stabilizer of x in GL(2, Z) acting by
/// Mobius maps; comes from one turn around the minimal period.
IntMatrix stabilizer_generator(const QuadraticIrrational& x);

}  // namespace kclass
