#ifndef INVMOD_EXACT_LINALG_HPP
#define INVMOD_EXACT_LINALG_HPP

#include <optional>

#include "invmod/types.hpp"

namespace invmod {

inline Eigen::Index exact_rank(const RationalMatrix& m) {
  if (m.size() == 0) return 0;
  return Eigen::FullPivLU<RationalMatrix>(m).rank();
}

// Columns span the kernel; empty matrix (cols()==0) for injective maps.
inline RationalMatrix exact_kernel(const RationalMatrix& m) {
  Eigen::FullPivLU<RationalMatrix> lu(m);
  if (lu.rank() == m.cols()) return RationalMatrix(m.cols(), 0);
  return lu.kernel();
}

inline bool in_column_span(const RationalMatrix& basis, const RationalVector& v) {
  RationalMatrix augmented(basis.rows(), basis.cols() + 1);
  augmented << basis, v;
  return exact_rank(augmented) == exact_rank(basis);
}

// Coordinates of v in the (independent) columns of basis; nullopt if outside.
std::optional<RationalVector> exact_coordinates(const RationalMatrix& basis,
                                                const RationalVector& v);

struct ExactAffineSolution {
  bool consistent = false;
  RationalVector particular;     // one solution of A x = b
  RationalMatrix kernel;         // columns span ker(A)
  RationalVector inconsistency_witness;  // w with wᵀA = 0, wᵀb ≠ 0 when inconsistent
};

// Full affine solution set of A x = b over the rationals.
ExactAffineSolution exact_solve_affine(const RationalMatrix& a,
                                       const RationalVector& b);

// Minimizer of xᵀ Q x over {particular + kernel·t}; Q must be positive
// definite on the kernel directions.
RationalVector exact_min_quadratic_on_affine(const ExactAffineSolution& sol,
                                             const RationalMatrix& q);

// Sylvester test on leading principal minors.
bool exact_positive_definite(const RationalMatrix& sym);

inline bool exact_negative_definite(const RationalMatrix& sym) {
  return exact_positive_definite(RationalMatrix(-sym));
}

inline RationalMatrix kron(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Column-major vec / unvec.
inline RationalVector vec(const RationalMatrix& m) {
  RationalVector out(m.size());
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) out(k++) = m(i, j);
  return out;
}

inline RationalMatrix unvec(const RationalVector& v, Eigen::Index rows,
                            Eigen::Index cols) {
  RationalMatrix out(rows, cols);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = v(k++);
  return out;
}

}  // namespace invmod

#endif
