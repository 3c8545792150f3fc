#include <doctest.h>

#include <random>

#include "invmod/errors.hpp"
#include "invmod/moduli.hpp"
#include "invmod/presets.hpp"
#include "test_helpers.hpp"

using namespace invmod;
using namespace invmod::testing;

namespace {

// Half-plane split with target k and chi(h0) = chi0.
struct HalfPlaneSetup {
  ComplexStructure cs;
  LieAlgebra k;
  LieHomChi chi;
};

HalfPlaneSetup halfplane_setup(const std::string& target, const Vector& chi0) {
  PresetEntry hp = load_preset("halfplane_split");
  LieAlgebra k = load_preset(target).algebra;
  Matrix m(chi0.size(), 1);
  m.col(0) = chi0;
  LieHomChi chi = validate_chi(hp.algebra, hp.split->isotropy, k, m);
  return HalfPlaneSetup{ComplexStructure{*hp.split, *hp.j}, std::move(k), chi};
}

Vector e3d(int i, double c = 1.0) {
  Vector v = Vector::Zero(3);
  v(i) = c;
  return v;
}

}  // namespace

TEST_CASE("validate_chi accepts homomorphisms and rejects the rest") {
  // h0 = span{f1, f4} in the product preset is abelian, so chi is a
  // homomorphism exactly when the two image vectors commute in k.
  LieAlgebra prod = load_preset("product_halfplane_split").algebra;
  RationalMatrix h(6, 2);
  h.setZero();
  h(0, 0) = 1;
  h(3, 1) = 1;
  Subspace h0 = Subspace::from_basis(h, 6);
  LieAlgebra su2 = load_preset("su2").algebra;

  Matrix commuting(3, 2);
  commuting << 2, 1, 0, 0, 0, 0;  // both multiples of e1
  CHECK_NOTHROW(validate_chi(prod, h0, su2, commuting));

  Matrix noncommuting(3, 2);
  noncommuting << 2, 0, 0, 1, 0, 0;  // [2 e1, e2] = 2 e3 != 0
  CHECK_THROWS_AS(validate_chi(prod, h0, su2, noncommuting), NotAHomomorphism);

  // chi = diag(1, 1, -1) on su2 itself flips one structure constant.
  Subspace all = Subspace::from_basis(RationalMatrix::Identity(3, 3), 3);
  CHECK_NOTHROW(validate_chi(su2, all, su2, Matrix::Identity(3, 3)));
  Matrix flip = Matrix::Identity(3, 3);
  flip(2, 2) = -1;
  CHECK_THROWS_AS(validate_chi(su2, all, su2, flip), NotAHomomorphism);

  CHECK_THROWS_AS(validate_chi(su2, all, su2, Matrix::Identity(2, 3)),
                  DimensionMismatch);
}

TEST_CASE("intertwiner space dimensions against the eigenvalue oracle") {
  // For the half-plane split, mu intertwines the speed-2 rotation on s with
  // ad(chi0), so dim S = 2 x (complex dimension of the 2i-eigenspace).
  for (double t : {0.0, 0.5, 1.0, 2.0, 3.0, 4.0}) {
    HalfPlaneSetup setup = halfplane_setup("su2", e3d(0, t));
    IntertwinerSpace space = intertwiner_space(setup.cs.split, setup.k, setup.chi);
    EigenStratumResult oracle = oracle_eigen_stratum(setup.k, e3d(0, t));
    CHECK(space.dim() == 2 * oracle.eigenvector_basis.cols());
    CHECK(space.dim() == (t == 2.0 ? 2 : 0));
  }

  // u(1) target: ad(chi0) = 0 never matches the invertible rotation.
  HalfPlaneSetup u1 = halfplane_setup("u1", Vector::Constant(1, 1.0));
  CHECK(intertwiner_space(u1.cs.split, u1.k, u1.chi).dim() == 0);
}

TEST_CASE("trivial isotropy leaves mu unconstrained") {
  LieAlgebra ab = load_preset("abelian_n").algebra;
  Subspace h0 = Subspace::from_basis(RationalMatrix(2, 0), 2);
  Subspace s = Subspace::from_basis(RationalMatrix::Identity(2, 2), 2);
  ReductiveSplit split = make_split(ab, h0, s);
  LieAlgebra su2 = load_preset("su2").algebra;
  LieHomChi chi = validate_chi(ab, h0, su2, Matrix(3, 0));
  IntertwinerSpace space = intertwiner_space(split, su2, chi);
  CHECK(space.dim() == 6);  // dim k * dim s
  ConnectionSpace conn = connection_space_description(split, su2, chi);
  CHECK(conn.reference.matrix.isZero(0.0));
  CHECK(conn.directions.dim() == 6);
}

TEST_CASE("intertwiner basis elements are equivariant, others are not") {
  HalfPlaneSetup setup = halfplane_setup("su2", e3d(0, 2.0));
  IntertwinerSpace space = intertwiner_space(setup.cs.split, setup.k, setup.chi);
  REQUIRE(space.dim() == 2);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> box(-2.0, 2.0);
  for (const MuMap& b : space.basis)
    CHECK(equivariance_check(setup.cs.split, setup.k, setup.chi, b).ok);
  Vector coords(2);
  coords << box(rng), box(rng);
  MuMap mixed{space.materialize(coords)};
  CHECK(equivariance_check(setup.cs.split, setup.k, setup.chi, mixed).ok);

  Matrix junk = Matrix::Zero(3, 2);
  junk(0, 0) = 1.0;
  EquivarianceCheck bad =
      equivariance_check(setup.cs.split, setup.k, setup.chi, MuMap{junk});
  CHECK_FALSE(bad.ok);
  CHECK(bad.max_violation > 0.1);
}

TEST_CASE("curvature formula on the half-plane") {
  // proj_s[E, F] = 0, so F(E, F) = [mu E, mu F] is the su2 cross product.
  HalfPlaneSetup setup = halfplane_setup("su2", e3d(0, 2.0));
  Matrix m(3, 2);
  m.col(0) = e3d(0);
  m.col(1) = e3d(1);
  CurvatureTensor f = curvature_mu(setup.cs.split, setup.k, MuMap{m});
  CHECK((f.at(0, 1) - e3d(2)).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK((f.at(1, 0) + e3d(2)).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK(f.at(0, 0).isZero(0.0));

  // The canonical connection mu = 0 is flat here.
  CurvatureTensor f0 =
      curvature_mu(setup.cs.split, setup.k, MuMap{Matrix::Zero(3, 2)});
  CHECK(f0.max_norm() == 0.0);

  // Bilinear evaluation agrees with the tensor on random inputs.
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  Matrix mu(3, 2);
  for (int i = 0; i < 6; ++i) mu(i % 3, i / 3) = box(rng);
  CurvatureTensor tensor = curvature_mu(setup.cs.split, setup.k, MuMap{mu});
  for (int trial = 0; trial < 20; ++trial) {
    Vector x(2), y(2);
    x << box(rng), box(rng);
    y << box(rng), box(rng);
    Vector direct = curvature_eval(setup.cs.split, setup.k, MuMap{mu}, x, y);
    Vector expanded = Vector::Zero(3);
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < 2; ++q) expanded += x(p) * y(q) * tensor.at(p, q);
    CHECK((direct - expanded).lpNorm<Eigen::Infinity>() < 1e-12);
  }
}

TEST_CASE("canonical connection curvature matches the exact gamma0 values") {
  // mu = 0 curvature is -proj_s-complemented bracket; compare against the
  // exact rational computation expressed in isotropy coordinates. On sl2r
  // with h0 = span{h0} the only pair gives 2 h0, whose s-part vanishes, so
  // the k-valued tensor with chi = 0 into u1 is zero; use the product preset
  // cross pairs to exercise nonzero s-brackets instead.
  PresetEntry prod = load_preset("product_halfplane_split");
  LieAlgebra u1 = load_preset("u1").algebra;
  Matrix mu = Matrix::Ones(1, 4);
  CurvatureTensor f = curvature_mu(*prod.split, u1, MuMap{mu});
  for (int p = 0; p < 4; ++p)
    for (int q = p + 1; q < 4; ++q) {
      Vector expected =
          -mu * to_double(RationalVector(prod.split->s_bracket(p, q)));
      // u1 brackets vanish, so only the -mu(bracket) term survives.
      CHECK((f.at(p, q) - expected).lpNorm<Eigen::Infinity>() < 1e-14);
    }
}

TEST_CASE("type (1,1) defect vanishes identically when dim s = 2") {
  // With one pair (p,q) and J the rotation, F(J xi, J zeta) = F(xi, zeta)
  // holds for every mu, equivariant or not.
  HalfPlaneSetup setup = halfplane_setup("su2", e3d(0, 2.0));
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> box(-3.0, 3.0);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix mu(3, 2);
    for (int i = 0; i < 6; ++i) mu(i % 3, i / 3) = box(rng);
    CHECK(type11_defect(setup.cs, setup.k, MuMap{mu}).max_norm < 1e-14);
  }
}

TEST_CASE("type (1,1) defect detects cross-factor curvature") {
  PresetEntry prod = load_preset("product_halfplane_split");
  ComplexStructure cs{*prod.split, *prod.j};
  LieAlgebra su2 = load_preset("su2").algebra;
  // mu(E1) = e1, mu(E2) = e2, zero otherwise: the cross pair (E1, E2) picks
  // up [e1, e2] - [mu J E1, mu J E2] = e3 - 0.
  Matrix mu = Matrix::Zero(3, 4);
  mu(0, 0) = 1.0;
  mu(1, 2) = 1.0;
  Type11Defect defect = type11_defect(cs, su2, MuMap{mu});
  CHECK(defect.max_norm == doctest::Approx(1.0));
  CHECK((defect.tensor.at(0, 2) - e3d(2)).lpNorm<Eigen::Infinity>() < 1e-14);

  CHECK_THROWS_AS(type11_defect(cs, su2, MuMap{Matrix::Zero(3, 2)}),
                  SplitMismatch);
}

TEST_CASE("holomorphic locus on the half-plane is all of S") {
  HalfPlaneSetup setup = halfplane_setup("su2", e3d(0, 2.0));
  SolverOptions opts;
  opts.starts = 16;
  LocusResult result = solve_holomorphic_locus(setup.cs, setup.k, setup.chi, opts);
  CHECK(result.space.dim() == 2);
  CHECK(result.failed_starts == 0);
  REQUIRE(!result.solutions.empty());
  for (const LocusSolution& sol : result.solutions) {
    CHECK(sol.residual <= opts.tol);
    CHECK(sol.local_dim == 2);  // the whole 2-dim space solves F_J = 0
    CHECK(type11_defect(setup.cs, setup.k, sol.mu).max_norm <= 1e-9);
    CHECK(equivariance_check(setup.cs.split, setup.k, setup.chi, sol.mu).ok);
  }
}

TEST_CASE("holomorphic locus with empty intertwiner space is the origin") {
  HalfPlaneSetup setup = halfplane_setup("su2", e3d(0, 1.0));
  LocusResult result = solve_holomorphic_locus(setup.cs, setup.k, setup.chi);
  CHECK(result.space.dim() == 0);
  REQUIRE(result.solutions.size() == 1);
  CHECK(result.solutions[0].mu.matrix.isZero(0.0));
  CHECK(result.solutions[0].local_dim == 0);
}

TEST_CASE("solver is deterministic and honors its options") {
  PresetEntry prod = load_preset("product_halfplane_split");
  ComplexStructure cs{*prod.split, *prod.j};
  LieAlgebra su2 = load_preset("su2").algebra;
  Matrix chi_m = Matrix::Zero(3, 2);
  chi_m(0, 0) = 2.0;
  chi_m(0, 1) = 2.0;
  LieHomChi chi = validate_chi(prod.algebra, prod.split->isotropy, su2, chi_m);
  SolverOptions opts;
  opts.seed = 5;
  opts.starts = 24;
  LocusResult a = solve_holomorphic_locus(cs, su2, chi, opts);
  LocusResult b = solve_holomorphic_locus(cs, su2, chi, opts);
  REQUIRE(a.solutions.size() == b.solutions.size());
  for (size_t i = 0; i < a.solutions.size(); ++i) {
    CHECK((a.solutions[i].coords - b.solutions[i].coords).norm() == 0.0);
    CHECK(a.solutions[i].residual <= opts.tol);
    CHECK(type11_defect(cs, su2, a.solutions[i].mu).max_norm <= 1e-9);
  }
}
