#include "invmod/reductive.hpp"

#include <sstream>

#include "invmod/errors.hpp"

namespace invmod {
namespace {

std::string describe_vector(const RationalVector& v) {
  std::ostringstream os;
  os << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i)
    os << (i ? "," : "") << format_rational(v(i));
  os << ')';
  return os.str();
}

}  // namespace

RationalMatrix ReductiveSplit::isotropy_action_on_s(Eigen::Index i) const {
  RationalMatrix ad_h = algebra.adjoint(RationalVector(isotropy.basis.col(i)));
  RationalMatrix image = ad_h * complement.basis;  // columns stay in s
  RationalMatrix out =
      Eigen::FullPivLU<RationalMatrix>(complement.basis).solve(image);
  if (!(complement.basis * out - image).isZero(Rational(0)))
    throw Error("ad(h) does not preserve s");
  return out;
}

RationalVector ReductiveSplit::s_coordinates(const RationalVector& v) const {
  RationalVector projected = proj_s * v;
  auto coords = exact_coordinates(complement.basis, projected);
  if (!coords) throw Error("projection left the complement (broken split)");
  return *coords;
}

RationalVector ReductiveSplit::s_bracket(Eigen::Index p, Eigen::Index q) const {
  return s_coordinates(algebra.bracket(RationalVector(complement.basis.col(p)),
                                       RationalVector(complement.basis.col(q))));
}

std::variant<ReductiveSplit, NoComplement> find_invariant_complement(
    const LieAlgebra& algebra, const Subspace& h0, unsigned /*seed*/) {
  if (!is_subalgebra(algebra, h0))
    throw NotASubalgebra("isotropy candidate is not a subalgebra");
  const Eigen::Index n = algebra.dim();
  const Eigen::Index m = h0.rank();
  const RationalMatrix& h = h0.basis;

  // Projector ansatz P = H Y with Y (m x n); constraints:
  //   Y H = I_m                       (P restricts to the identity on h0)
  //   Y ad(h_j) = R_j Y for all j     (equivariance, with ad(h_j) H = H R_j)
  std::vector<RationalMatrix> restricted;
  for (Eigen::Index j = 0; j < m; ++j) {
    RationalMatrix image = algebra.adjoint(RationalVector(h.col(j))) * h;
    RationalMatrix r = Eigen::FullPivLU<RationalMatrix>(h).solve(image);
    restricted.push_back(std::move(r));
  }

  const Eigen::Index unknowns = m * n;
  RationalMatrix id_m = RationalMatrix::Identity(m, m);
  RationalMatrix id_n = RationalMatrix::Identity(n, n);
  RationalMatrix system(m * m + m * n * m, unknowns);
  RationalVector rhs = RationalVector::Zero(system.rows());
  // vec(Y H) = (H^T kron I_m) vec(Y) = vec(I_m)
  system.topRows(m * m) = kron(RationalMatrix(h.transpose()), id_m);
  rhs.head(m * m) = vec(id_m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const RationalMatrix ad_h = algebra.adjoint(RationalVector(h.col(j)));
    system.block(m * m + j * m * n, 0, m * n, unknowns) =
        kron(RationalMatrix(ad_h.transpose()), id_m) -
        kron(id_n, restricted[j]);
  }

  ExactAffineSolution sol = exact_solve_affine(system, rhs);
  if (!sol.consistent) {
    return NoComplement{sol.inconsistency_witness,
                        "equivariant projector equations are inconsistent"};
  }
  // Minimize |P|_F^2 = tr(Y^T H^T H Y): quadratic form I_n kron (H^T H).
  RationalMatrix q = kron(id_n, RationalMatrix(h.transpose() * h));
  RationalVector y_vec = exact_min_quadratic_on_affine(sol, q);
  RationalMatrix y = unvec(y_vec, m, n);
  RationalMatrix proj_h = h * y;
  RationalMatrix s_basis = exact_kernel(proj_h);
  Subspace s = Subspace::from_basis(s_basis, n);

  ComplementCheck check = check_invariant_complement(algebra, h0, s);
  if (!check.ok) throw Error("internal: computed complement fails checks: " + check.violation);
  return ReductiveSplit{algebra, h0, s, proj_h,
                        RationalMatrix(RationalMatrix::Identity(n, n) - proj_h)};
}

ComplementCheck check_invariant_complement(const LieAlgebra& algebra,
                                           const Subspace& h0,
                                           const Subspace& s) {
  const Eigen::Index n = algebra.dim();
  if (h0.ambient_dim() != n || s.ambient_dim() != n)
    return {false, "ambient dimension mismatch"};
  if (h0.rank() + s.rank() != n)
    return {false, "dim h0 + dim s != dim a"};
  RationalMatrix joint(n, n);
  joint << h0.basis, s.basis;
  if (exact_rank(joint) != n) return {false, "h0 and s do not span a"};
  for (Eigen::Index j = 0; j < h0.rank(); ++j)
    for (Eigen::Index c = 0; c < s.rank(); ++c) {
      RationalVector b = algebra.bracket(RationalVector(h0.basis.col(j)),
                                         RationalVector(s.basis.col(c)));
      if (!s.contains(b))
        return {false, "ad(h_" + std::to_string(j) + ") s_" + std::to_string(c) +
                           " = " + describe_vector(b) + " leaves s"};
    }
  return {};
}

ReductiveSplit make_split(const LieAlgebra& algebra, const Subspace& h0,
                          const Subspace& s) {
  if (!is_subalgebra(algebra, h0))
    throw NotASubalgebra("isotropy is not a subalgebra");
  ComplementCheck check = check_invariant_complement(algebra, h0, s);
  if (!check.ok) throw Error("invalid reductive split: " + check.violation);
  const Eigen::Index n = algebra.dim();
  RationalMatrix joint(n, n);
  joint << h0.basis, s.basis;
  // proj_h drops the s-coordinates of the (h0 | s) expansion.
  RationalMatrix inverse = Eigen::FullPivLU<RationalMatrix>(joint).inverse();
  RationalMatrix proj_h = h0.basis * inverse.topRows(h0.rank());
  return ReductiveSplit{algebra, h0, s, proj_h,
                        RationalMatrix(RationalMatrix::Identity(n, n) - proj_h)};
}

ComplexStructureCheck check_complex_structure(const ReductiveSplit& split,
                                              const RationalMatrix& j) {
  const Eigen::Index r = split.dim_s();
  if (j.rows() != r || j.cols() != r)
    return {false, "J must be " + std::to_string(r) + "x" + std::to_string(r)};
  if (!(j * j + RationalMatrix::Identity(r, r)).isZero(Rational(0)))
    return {false, "J^2 != -identity"};
  for (Eigen::Index i = 0; i < split.dim_h(); ++i) {
    RationalMatrix action = split.isotropy_action_on_s(i);
    if (!(action * j - j * action).isZero(Rational(0)))
      return {false, "J does not commute with ad(h_" + std::to_string(i) + ")|_s"};
  }
  return {};
}

double nijenhuis_defect(const ComplexStructure& cs) {
  ComplexStructureCheck check = check_complex_structure(cs.split, cs.j);
  if (!check.ok) throw InvalidJ(check.violation);
  const ReductiveSplit& split = cs.split;
  const Eigen::Index r = split.dim_s();
  const RationalMatrix& s = split.complement.basis;
  const LieAlgebra& l = split.algebra;

  auto bracket_s = [&](const RationalVector& x, const RationalVector& y) {
    return split.s_coordinates(l.bracket(RationalVector(s * x), RationalVector(s * y)));
  };

  Rational max_defect(0);
  for (Eigen::Index p = 0; p < r; ++p)
    for (Eigen::Index q = p + 1; q < r; ++q) {
      RationalVector xi = RationalVector::Zero(r), zeta = RationalVector::Zero(r);
      xi(p) = 1;
      zeta(q) = 1;
      RationalVector jxi = cs.j * xi, jzeta = cs.j * zeta;
      RationalVector defect = bracket_s(jxi, jzeta) - bracket_s(xi, zeta) -
                              cs.j * (bracket_s(jxi, zeta) + bracket_s(xi, jzeta));
      for (Eigen::Index i = 0; i < r; ++i)
        max_defect = std::max(max_defect, Rational(abs(defect(i))));
    }
  return max_defect.convert_to<double>();
}

RationalVector gamma0_curvature(const ReductiveSplit& split, Eigen::Index p,
                                Eigen::Index q) {
  const RationalMatrix& s = split.complement.basis;
  RationalVector b = split.algebra.bracket(RationalVector(s.col(p)),
                                           RationalVector(s.col(q)));
  return RationalVector(-(split.proj_h * b));
}

bool gamma0_type11_check(const ComplexStructure& cs) {
  ComplexStructureCheck check = check_complex_structure(cs.split, cs.j);
  if (!check.ok) throw InvalidJ(check.violation);
  const ReductiveSplit& split = cs.split;
  const Eigen::Index r = split.dim_s();
  const RationalMatrix& s = split.complement.basis;
  const LieAlgebra& l = split.algebra;

  auto f0 = [&](const RationalVector& x, const RationalVector& y) {
    return RationalVector(
        -(split.proj_h * l.bracket(RationalVector(s * x), RationalVector(s * y))));
  };

  for (Eigen::Index p = 0; p < r; ++p)
    for (Eigen::Index q = p + 1; q < r; ++q) {
      RationalVector xi = RationalVector::Zero(r), zeta = RationalVector::Zero(r);
      xi(p) = 1;
      zeta(q) = 1;
      if (!(f0(RationalVector(cs.j * xi), RationalVector(cs.j * zeta)) - f0(xi, zeta))
               .isZero(Rational(0)))
        return false;
    }
  return true;
}

}  // namespace invmod
