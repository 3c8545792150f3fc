#include "invmod/presets.hpp"

#include <Eigen/Eigenvalues>

#include "invmod/errors.hpp"

namespace invmod {
namespace {

using Table = std::vector<std::vector<RationalVector>>;

Table zero_table(int n) {
  return Table(n, std::vector<RationalVector>(n, RationalVector::Zero(n)));
}

void set_bracket(Table& t, int i, int j, const RationalVector& v) {
  t[i][j] = v;
  t[j][i] = -v;
}

RationalVector unit(int n, int i, const Rational& c = Rational(1)) {
  RationalVector v = RationalVector::Zero(n);
  v(i) = c;
  return v;
}

// Basis (h0, E, F) with [h0,E]=2F, [h0,F]=-2E, [E,F]=-2h0; matches the 2x2
// matrices h0=[[0,-1],[1,0]], E=diag(1,-1), F=[[0,1],[1,0]].
LieAlgebra make_sl2r() {
  Table t = zero_table(3);
  set_bracket(t, 0, 1, unit(3, 2, 2));
  set_bracket(t, 0, 2, unit(3, 1, -2));
  set_bracket(t, 1, 2, unit(3, 0, -2));
  return LieAlgebra::validate("sl2r", t, {"h0", "E", "F"});
}

LieAlgebra make_su2() {
  Table t = zero_table(3);
  set_bracket(t, 0, 1, unit(3, 2));
  set_bracket(t, 1, 2, unit(3, 0));
  set_bracket(t, 2, 0, unit(3, 1));
  return LieAlgebra::validate("su2", t, {"e1", "e2", "e3"});
}

LieAlgebra make_abelian(int n, const std::string& name) {
  return LieAlgebra::validate(name, zero_table(n));
}

LieAlgebra make_aff1() {
  Table t = zero_table(2);
  set_bracket(t, 0, 1, unit(2, 1));
  return LieAlgebra::validate("aff1", t, {"f1", "f2"});
}

// Direct sum of two sl2r copies.
LieAlgebra make_sl2r_product() {
  Table t = zero_table(6);
  for (int block = 0; block < 2; ++block) {
    int o = 3 * block;
    set_bracket(t, o + 0, o + 1, unit(6, o + 2, 2));
    set_bracket(t, o + 0, o + 2, unit(6, o + 1, -2));
    set_bracket(t, o + 1, o + 2, unit(6, o + 0, -2));
  }
  return LieAlgebra::validate("sl2r+sl2r", t,
                              {"h0_1", "E_1", "F_1", "h0_2", "E_2", "F_2"});
}

RationalMatrix columns(std::initializer_list<int> idx, int n) {
  RationalMatrix out = RationalMatrix::Zero(n, static_cast<int>(idx.size()));
  int c = 0;
  for (int i : idx) out(i, c++) = 1;
  return out;
}

RationalMatrix rotation_j(int blocks) {
  RationalMatrix j = RationalMatrix::Zero(2 * blocks, 2 * blocks);
  for (int b = 0; b < blocks; ++b) {
    j(2 * b + 1, 2 * b) = 1;   // J(E) = F
    j(2 * b, 2 * b + 1) = -1;  // J(F) = -E
  }
  return j;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"sl2r", "su2", "u1", "abelian_n", "aff1", "halfplane_split",
          "product_halfplane_split"};
}

PresetEntry load_preset(const std::string& name) {
  if (name == "sl2r") return {make_sl2r(), {}, {}, {}};
  if (name == "su2") return {make_su2(), {}, {}, {}};
  if (name == "u1") return {make_abelian(1, "u1"), {}, {}, {}};
  if (name == "abelian_n") return {make_abelian(2, "abelian_n"), {}, {}, {}};
  if (name == "aff1") {
    LieAlgebra aff = make_aff1();
    Subspace h0 = Subspace::from_basis(columns({1}, 2), 2);
    return {aff, h0, {}, {}};
  }
  if (name == "halfplane_split") {
    LieAlgebra sl2 = make_sl2r();
    Subspace h0 = Subspace::from_basis(columns({0}, 3), 3);
    Subspace s = Subspace::from_basis(columns({1, 2}, 3), 3);
    return {sl2, h0, make_split(sl2, h0, s), rotation_j(1)};
  }
  if (name == "product_halfplane_split") {
    LieAlgebra prod = make_sl2r_product();
    Subspace h0 = Subspace::from_basis(columns({0, 3}, 6), 6);
    Subspace s = Subspace::from_basis(columns({1, 2, 4, 5}, 6), 6);
    return {prod, h0, make_split(prod, h0, s), rotation_j(2)};
  }
  throw UnknownPreset(name);
}

EigenStratumResult oracle_eigen_stratum(const LieAlgebra& k, const Vector& chi0) {
  EigenStratumResult out;
  ComplexMatrix ad = k.adjoint(chi0).cast<std::complex<double>>();
  Eigen::ComplexEigenSolver<ComplexMatrix> es(ad);
  const std::complex<double> target(0.0, 2.0);
  std::vector<Eigen::Index> hits;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i) - target) <= 1e-9) hits.push_back(i);
  out.admissible = !hits.empty();
  out.eigenvector_basis = ComplexMatrix(k.dim(), hits.size());
  for (size_t c = 0; c < hits.size(); ++c)
    out.eigenvector_basis.col(c) = es.eigenvectors().col(hits[c]);
  return out;
}

HalfPlaneStratification halfplane_moduli(const LieAlgebra& k) {
  HalfPlaneStratification out;
  if (k.dim() == 1 && k.is_abelian()) {
    out.target = "u1";
    HalfPlaneStratum stratum;
    stratum.description = "abelian target: A = 0, chi0 a real parameter";
    stratum.chi_constraint = "chi0 in R (no constraint)";
    stratum.mu_complex_dim = 0;
    stratum.sample_chi0 = Vector::Constant(1, 1.0);
    out.strata.push_back(std::move(stratum));
    return out;
  }
  if (k.dim() == 3 && load_preset("su2").algebra.basis_adjoint(0) == k.basis_adjoint(0) &&
      load_preset("su2").algebra.basis_adjoint(1) == k.basis_adjoint(1) &&
      load_preset("su2").algebra.basis_adjoint(2) == k.basis_adjoint(2)) {
    out.target = "su2";

    HalfPlaneStratum flat;
    flat.description = "A = 0, canonical chi0 = t*e1 with t >= 0";
    flat.chi_constraint = "|chi0| = t, any t >= 0";
    flat.mu_complex_dim = 0;
    flat.sample_chi0 = Vector::Unit(3, 0);
    out.strata.push_back(std::move(flat));

    HalfPlaneStratum eigen;
    eigen.description =
        "canonical chi0 = 2*e1, A = c*(e2 - i*e3) with c > 0 real";
    eigen.chi_constraint = "|chi0| = 2 (eigenvalue condition)";
    eigen.mu_complex_dim = 1;
    eigen.sample_chi0 = 2.0 * Vector::Unit(3, 0);
    eigen.sample_a = ComplexVector(3);
    eigen.sample_a << 0.0, std::complex<double>(1.0, 0.0),
        std::complex<double>(0.0, -1.0);
    // Re-verify the eigenvalue equation at the representative.
    ComplexMatrix ad = k.adjoint(eigen.sample_chi0).cast<std::complex<double>>();
    eigen.eigen_residual =
        (ad * eigen.sample_a - std::complex<double>(0.0, 2.0) * eigen.sample_a)
            .cwiseAbs()
            .maxCoeff();
    if (eigen.eigen_residual > 1e-10)
      throw Error("half-plane stratum representative fails its own equation");
    out.strata.push_back(std::move(eigen));
    return out;
  }
  throw UnsupportedTargetAlgebra("halfplane_moduli supports the u1 and su2 presets");
}

}  // namespace invmod
