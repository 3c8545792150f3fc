#ifndef INVMOD_MODULI_HPP
#define INVMOD_MODULI_HPP

#include <vector>

#include "invmod/reductive.hpp"

namespace invmod {

// Lie algebra homomorphism chi: h0 -> k, as a (dim k) x (dim h0) matrix in
// the chosen bases. Construct through validate_chi.
struct LieHomChi {
  Matrix matrix;
};

// Throws NotAHomomorphism when chi([h,h']) != [chi(h), chi(h')] beyond 1e-12.
LieHomChi validate_chi(const LieAlgebra& algebra, const Subspace& h0,
                       const LieAlgebra& k, const Matrix& matrix);

// Linear map mu: s -> k as a (dim k) x (dim s) matrix in s-coordinates.
struct MuMap {
  Matrix matrix;
};

// Intertwiner space S = { mu | mu o ad(h)|_s = ad(chi(h)) o mu for all h }.
struct IntertwinerSpace {
  std::vector<MuMap> basis;  // orthonormal in the Frobenius inner product
  Eigen::Index dim() const { return static_cast<Eigen::Index>(basis.size()); }

  Matrix materialize(const Vector& coords) const;
};

IntertwinerSpace intertwiner_space(const ReductiveSplit& split,
                                   const LieAlgebra& k, const LieHomChi& chi);

// Affine description of the invariant connections: reference point mu = 0
// (the canonical connection) plus the intertwiner directions.
struct ConnectionSpace {
  MuMap reference;  // zero map
  IntertwinerSpace directions;
};

ConnectionSpace connection_space_description(const ReductiveSplit& split,
                                             const LieAlgebra& k,
                                             const LieHomChi& chi);

// Antisymmetric k-valued 2-tensor on s, stored on basis pairs p < q.
struct CurvatureTensor {
  Eigen::Index s_dim = 0;
  Matrix values;  // (dim k) x (number of pairs), pair (p,q) column-indexed

  static Eigen::Index pair_index(Eigen::Index p, Eigen::Index q, Eigen::Index r);
  Vector at(Eigen::Index p, Eigen::Index q) const;  // antisymmetric lookup
  double max_norm() const;
};

// F(p,q) = -mu(proj_s [s_p, s_q]) + [mu(s_p), mu(s_q)].
CurvatureTensor curvature_mu(const ReductiveSplit& split, const LieAlgebra& k,
                             const MuMap& mu);

// Bilinear evaluation of the same curvature on arbitrary s-coordinate vectors.
Vector curvature_eval(const ReductiveSplit& split, const LieAlgebra& k,
                      const MuMap& mu, const Vector& x, const Vector& y);

struct Type11Defect {
  CurvatureTensor tensor;
  double max_norm = 0.0;
};

// F_J(mu)(xi,zeta) = -mu([xi,zeta]) + [mu xi, mu zeta]
//                    + mu([J xi, J zeta]) - [mu J xi, mu J zeta],
// with brackets s-projected; equals F(xi,zeta) - F(J xi, J zeta).
Type11Defect type11_defect(const ComplexStructure& cs, const LieAlgebra& k,
                           const MuMap& mu);

struct EquivarianceCheck {
  bool ok = false;
  double max_violation = 0.0;
};

EquivarianceCheck equivariance_check(const ReductiveSplit& split,
                                     const LieAlgebra& k, const LieHomChi& chi,
                                     const MuMap& mu, double tol = 1e-10);

struct SolverOptions {
  unsigned seed = 0;
  int starts = 64;
  int max_iter = 100;
  double tol = 1e-10;
};

struct LocusSolution {
  Vector coords;     // in the intertwiner basis
  MuMap mu;
  double residual = 0.0;
  Eigen::Index local_dim = 0;  // nullity of the F_J Jacobian at the solution
  Matrix tangent;    // intertwiner-coordinate tangent directions of the locus
};

struct LocusResult {
  IntertwinerSpace space;
  std::vector<LocusSolution> solutions;
  int failed_starts = 0;
};

// Solves F_J(mu) = 0 inside the intertwiner space by seeded multistart
// Gauss-Newton with backtracking; deterministic for fixed options.
LocusResult solve_holomorphic_locus(const ComplexStructure& cs,
                                    const LieAlgebra& k, const LieHomChi& chi,
                                    const SolverOptions& opts = {});

}  // namespace invmod

#endif
