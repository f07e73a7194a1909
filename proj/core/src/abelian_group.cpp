#include "kclass/abelian_group.hpp"

#include "kclass/error.hpp"
#include "kclass/smith.hpp"

#include <sstream>

namespace kclass {

FgAbelianGroup FgAbelianGroup::free(std::size_t rank) {
  FgAbelianGroup g;
  g.free_rank_ = rank;
  return g;
}

FgAbelianGroup FgAbelianGroup::cyclic(const Integer& order) {
  return from_cyclic_orders(IntVector{order});
}

FgAbelianGroup FgAbelianGroup::from_cyclic_orders(const IntVector& orders) {
  IntVector absolute;
  absolute.reserve(orders.size());
  for (const auto& o : orders) absolute.push_back(abs(o));
  return group_from_matrix(IntMatrix::diagonal(absolute));
}

FgAbelianGroup FgAbelianGroup::canonical(std::size_t free_rank, const IntVector& torsion) {
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    if (torsion[i] < 2) throw InvalidInput("invariant factors must be >= 2");
    if (i > 0 && torsion[i] % torsion[i - 1] != 0)
      throw InvalidInput("invariant factors must form a divisibility chain");
  }
  FgAbelianGroup g;
  g.free_rank_ = free_rank;
  g.torsion_ = torsion;
  return g;
}

Integer FgAbelianGroup::generator_order(std::size_t i) const {
  if (i < free_rank_) return 0;
  return torsion_.at(i - free_rank_);
}

std::optional<Integer> FgAbelianGroup::order() const {
  if (free_rank_ > 0) return std::nullopt;
  Integer n = 1;
  for (const auto& d : torsion_) n *= d;
  return n;
}

Integer FgAbelianGroup::exponent() const {
  if (free_rank_ > 0) return 0;
  return torsion_.empty() ? Integer(1) : torsion_.back();
}

IntMatrix FgAbelianGroup::relation_matrix() const {
  const std::size_t n = generator_count();
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < torsion_.size(); ++i)
    m(free_rank_ + i, free_rank_ + i) = torsion_[i];
  return m;
}

IntMatrix FgAbelianGroup::torsion_relations() const {
  IntMatrix m(generator_count(), torsion_.size());
  for (std::size_t i = 0; i < torsion_.size(); ++i) m(free_rank_ + i, i) = torsion_[i];
  return m;
}

IntVector FgAbelianGroup::reduce(const IntVector& x) const {
  if (x.size() != generator_count()) throw InvalidInput("element has wrong length for group");
  IntVector out = x;
  for (std::size_t i = 0; i < torsion_.size(); ++i)
    out[free_rank_ + i] = floor_mod(out[free_rank_ + i], torsion_[i]);
  return out;
}

bool FgAbelianGroup::equal_elements(const IntVector& x, const IntVector& y) const {
  return reduce(x) == reduce(y);
}

bool FgAbelianGroup::is_zero_element(const IntVector& x) const { return is_zero(reduce(x)); }

std::string FgAbelianGroup::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank_ == 1) {
    os << "Z";
    first = false;
  } else if (free_rank_ > 1) {
    os << "Z^" << free_rank_;
    first = false;
  }
  for (const auto& d : torsion_) {
    os << (first ? "" : " + ") << "Z/" << d;
    first = false;
  }
  return os.str();
}

Presentation present_cokernel(const IntMatrix& relations) {
  const SmithDecomposition s = smith_normal_form(relations);
  const std::size_t rows = relations.rows();

  std::vector<std::size_t> coords;
  IntVector torsion;
  for (std::size_t i = s.rank; i < rows; ++i) coords.push_back(i);
  const std::size_t free_rank = coords.size();
  for (std::size_t i = 0; i < s.rank; ++i) {
    if (s.d(i, i) == 1) continue;
    coords.push_back(i);
    torsion.push_back(s.d(i, i));
  }

  Presentation p;
  p.group = FgAbelianGroup::canonical(free_rank, torsion);
  p.projection = IntMatrix(coords.size(), rows);
  p.section = IntMatrix(rows, coords.size());
  for (std::size_t k = 0; k < coords.size(); ++k) {
    const Integer order = p.group.generator_order(k);
    for (std::size_t j = 0; j < rows; ++j) {
      p.projection(k, j) = order == 0 ? s.u(coords[k], j) : floor_mod(s.u(coords[k], j), order);
      p.section(j, k) = s.u_inv(j, coords[k]);
    }
  }
  return p;
}

FgAbelianGroup group_from_matrix(const IntMatrix& m) { return present_cokernel(m).group; }

}  // namespace kclass
