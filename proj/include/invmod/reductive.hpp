#ifndef INVMOD_REDUCTIVE_HPP
#define INVMOD_REDUCTIVE_HPP

#include <optional>
#include <string>
#include <variant>

#include "invmod/lie_algebra.hpp"

namespace invmod {

// Reductive splitting a = h0 (+) s with ad(h0)-invariant s, together with the
// projectors determined by it.
struct ReductiveSplit {
  LieAlgebra algebra;
  Subspace isotropy;    // h0, a subalgebra
  Subspace complement;  // s
  RationalMatrix proj_h;  // dim x dim projector onto h0 along s
  RationalMatrix proj_s;  // identity - proj_h

  Eigen::Index dim_s() const { return complement.rank(); }
  Eigen::Index dim_h() const { return isotropy.rank(); }

  // ad(h0 basis vector i) restricted to s, in s-coordinates (exact, since
  // ad(h) preserves s).
  RationalMatrix isotropy_action_on_s(Eigen::Index i) const;

  // s-coordinates of proj_s(v) for an ambient vector v.
  RationalVector s_coordinates(const RationalVector& v) const;

  // Exact s-coordinates of proj_s([s_p, s_q]) for basis pairs of s.
  RationalVector s_bracket(Eigen::Index p, Eigen::Index q) const;
};

struct NoComplement {
  RationalVector certificate;  // left null vector witnessing inconsistency
  std::string detail;
};

// Decides condition (C) for (algebra, h0) by exactly solving for an
// ad(h0)-equivariant projector onto h0 restricting to the identity; among all
// solutions the minimum-Frobenius-norm projector is returned, so the result
// is deterministic (the seed is kept for interface stability; the chosen
// representative does not depend on it). Throws NotASubalgebra.
std::variant<ReductiveSplit, NoComplement> find_invariant_complement(
    const LieAlgebra& algebra, const Subspace& h0, unsigned seed = 0);

struct ComplementCheck {
  bool ok = true;
  std::string violation;  // empty when ok
};

ComplementCheck check_invariant_complement(const LieAlgebra& algebra,
                                           const Subspace& h0,
                                           const Subspace& s);

// Builds the split from given h0 and s after checking the invariants.
ReductiveSplit make_split(const LieAlgebra& algebra, const Subspace& h0,
                          const Subspace& s);

// J acting on s-coordinates; J^2 = -id and [J, ad(h)|_s] = 0.
struct ComplexStructure {
  ReductiveSplit split;
  RationalMatrix j;  // r x r
};

struct ComplexStructureCheck {
  bool ok = true;
  std::string violation;
};

ComplexStructureCheck check_complex_structure(const ReductiveSplit& split,
                                              const RationalMatrix& j);

// Max-norm of the s-projected Nijenhuis expression over s-basis pairs;
// zero means the projected integrability criterion passes.
double nijenhuis_defect(const ComplexStructure& cs);

// Curvature of the canonical connection on s-basis pairs:
// F0(xi, zeta) = -proj_h([xi, zeta]); true iff F0(J xi, J zeta) = F0(xi, zeta).
bool gamma0_type11_check(const ComplexStructure& cs);

// F0 on a basis pair, as an ambient vector in h0.
RationalVector gamma0_curvature(const ReductiveSplit& split, Eigen::Index p,
                                Eigen::Index q);

}  // namespace invmod

#endif
