#ifndef INVMOD_LIE_ALGEBRA_HPP
#define INVMOD_LIE_ALGEBRA_HPP

#include <string>
#include <vector>

#include "invmod/exact_linalg.hpp"
#include "invmod/types.hpp"

namespace invmod {

// Finite-dimensional real Lie algebra given by exact structure constants
// over a fixed basis: [e_i, e_j] = sum_m c[i][j][m] e_m.
class LieAlgebra {
 public:
  // Validates antisymmetry and the Jacobi identity exactly; throws
  // AntisymmetryViolation / JacobiViolation otherwise. table[i][j] is the
  // coordinate vector of [e_i, e_j].
  static LieAlgebra validate(std::string name,
                             const std::vector<std::vector<RationalVector>>& table,
                             std::vector<std::string> basis_labels = {});

  Eigen::Index dim() const { return dim_; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& basis_labels() const { return basis_labels_; }

  // ad(e_i) as a dim x dim matrix; column j holds [e_i, e_j].
  const RationalMatrix& basis_adjoint(Eigen::Index i) const { return ad_[i]; }

  RationalVector bracket(const RationalVector& x, const RationalVector& y) const;
  RationalMatrix adjoint(const RationalVector& x) const;

  Matrix adjoint(const Vector& x) const;
  Vector bracket(const Vector& x, const Vector& y) const;

  bool is_abelian() const;

 private:
  LieAlgebra() = default;

  std::string name_;
  Eigen::Index dim_ = 0;
  std::vector<std::string> basis_labels_;
  std::vector<RationalMatrix> ad_;  // one per basis vector
  std::vector<Matrix> ad_double_;
};

// Subspace of a Lie algebra, spanned by the (independent) columns of basis.
struct Subspace {
  RationalMatrix basis;  // ambient_dim x r

  Eigen::Index ambient_dim() const { return basis.rows(); }
  Eigen::Index rank() const { return basis.cols(); }

  // Throws DimensionMismatch / Error if the columns are dependent.
  static Subspace from_basis(const RationalMatrix& basis, Eigen::Index ambient_dim);

  bool contains(const RationalVector& v) const { return in_column_span(basis, v); }
};

struct BilinearForm {
  RationalMatrix matrix;  // symmetric

  Rational eval(const RationalVector& x, const RationalVector& y) const {
    return (x.transpose() * matrix * y)(0, 0);
  }
};

// K_ij = trace(ad(e_i) ad(e_j)), exact.
BilinearForm killing_form(const LieAlgebra& l);

// True iff [S, S] lies in span(S), decided by exact rank tests.
bool is_subalgebra(const LieAlgebra& l, const Subspace& s);

// Center of l: { x | [x, y] = 0 for all y }.
Subspace center(const LieAlgebra& l);

// Derived subalgebra [l, l].
Subspace derived_subalgebra(const LieAlgebra& l);

// Compact type in the sense of admitting an ad-invariant inner product:
// l = z(l) (+) [l,l] with [l,l] semisimple of negative definite Killing form.
bool is_compact_type(const LieAlgebra& l);

// Any ad-invariant symmetric positive definite form, chosen deterministically
// as the solution of the exact invariance equations closest to the identity.
// Throws NoInvariantInnerProduct if none exists.
BilinearForm invariant_inner_product(const LieAlgebra& l);

}  // namespace invmod

#endif
