#include "kclass/group_hom.hpp"

#include "kclass/error.hpp"
#include "kclass/smith.hpp"

namespace kclass {

bool is_well_defined(const FgAbelianGroup& domain, const FgAbelianGroup& codomain,
                     const IntMatrix& matrix) {
  if (matrix.rows() != codomain.generator_count() || matrix.cols() != domain.generator_count())
    return false;
  for (std::size_t j = domain.free_rank(); j < domain.generator_count(); ++j) {
    const Integer d = domain.generator_order(j);
    for (std::size_t i = 0; i < codomain.generator_count(); ++i) {
      const Integer e = codomain.generator_order(i);
      const Integer image = d * matrix(i, j);
      if (e == 0 ? image != 0 : image % e != 0) return false;
    }
  }
  return true;
}

GroupHom::GroupHom(FgAbelianGroup domain, FgAbelianGroup codomain, IntMatrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != codomain_.generator_count() || matrix_.cols() != domain_.generator_count())
    throw InvalidInput("homomorphism matrix is " + std::to_string(matrix_.rows()) + "x" +
                       std::to_string(matrix_.cols()) + ", expected " +
                       std::to_string(codomain_.generator_count()) + "x" +
                       std::to_string(domain_.generator_count()));
  if (!is_well_defined(domain_, codomain_, matrix_))
    throw InvalidInput("ill-defined homomorphism " + domain_.to_string() + " -> " +
                       codomain_.to_string() + ": " + matrix_.to_string());
  for (std::size_t i = codomain_.free_rank(); i < codomain_.generator_count(); ++i) {
    const Integer e = codomain_.generator_order(i);
    for (std::size_t j = 0; j < matrix_.cols(); ++j) matrix_(i, j) = floor_mod(matrix_(i, j), e);
  }
}

GroupHom GroupHom::identity(const FgAbelianGroup& g) {
  return GroupHom(g, g, IntMatrix::identity(g.generator_count()));
}

GroupHom GroupHom::zero(const FgAbelianGroup& domain, const FgAbelianGroup& codomain) {
  return GroupHom(domain, codomain,
                  IntMatrix(codomain.generator_count(), domain.generator_count()));
}

GroupHom GroupHom::scalar(const FgAbelianGroup& g, const Integer& k) {
  return GroupHom(g, g, k * IntMatrix::identity(g.generator_count()));
}

IntVector GroupHom::apply(const IntVector& x) const { return codomain_.reduce(matrix_ * x); }

bool GroupHom::is_surjective() const {
  const IntMatrix span = IntMatrix::hstack(matrix_, codomain_.torsion_relations());
  for (std::size_t i = 0; i < codomain_.generator_count(); ++i)
    if (!in_column_span(span, unit_vector(codomain_.generator_count(), i))) return false;
  return true;
}

bool GroupHom::is_injective() const {
  // x maps to a relation of the codomain iff (x, y) solves [M | -T] = 0.
  const std::size_t n = domain_.generator_count();
  const IntMatrix kernel =
      integer_kernel(IntMatrix::hstack(matrix_, -codomain_.torsion_relations()));
  const IntMatrix domain_relations = domain_.torsion_relations();
  for (std::size_t c = 0; c < kernel.cols(); ++c) {
    IntVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = kernel(i, c);
    if (!in_column_span(domain_relations, x)) return false;
  }
  return true;
}

GroupHom GroupHom::inverse() const {
  if (!is_isomorphism()) throw InvalidInput("inverse of a non-isomorphism");
  IntMatrix inv(domain_.generator_count(), codomain_.generator_count());
  for (std::size_t i = 0; i < codomain_.generator_count(); ++i) {
    const auto x = preimage(*this, unit_vector(codomain_.generator_count(), i));
    inv.set_column(i, *x);
  }
  return GroupHom(codomain_, domain_, inv);
}

GroupHom compose(const GroupHom& outer, const GroupHom& inner) {
  if (inner.codomain() != outer.domain())
    throw InvalidInput("compose: " + inner.codomain().to_string() + " is not " +
                       outer.domain().to_string());
  return GroupHom(inner.domain(), outer.codomain(), outer.matrix() * inner.matrix());
}

std::optional<IntVector> preimage(const GroupHom& f, const IntVector& y) { return PreimageSolver(f)(y); }

PreimageSolver::PreimageSolver(const GroupHom& f)
    : domain_(f.domain()),
      solver_(IntMatrix::hstack(f.matrix(), f.codomain().torsion_relations())) {}

std::optional<IntVector> PreimageSolver::operator()(const IntVector& y) const {
  auto sol = solver_.solve(y);
  if (!sol) return std::nullopt;
  sol->resize(domain_.generator_count());
  return domain_.reduce(*sol);
}

}  // namespace kclass
