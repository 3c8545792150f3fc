#include <doctest.h>

#include "invmod/errors.hpp"
#include "invmod/presets.hpp"
#include "invmod/structure.hpp"
#include "test_helpers.hpp"

using namespace invmod;
using namespace invmod::testing;

TEST_CASE("validation accepts the su2 cyclic table and abelian tables") {
  CHECK_NOTHROW(load_preset("su2"));
  CHECK_NOTHROW(LieAlgebra::validate("ab2", zero_table(2)));
}

TEST_CASE("validation rejects antisymmetry and Jacobi violations") {
  Table t = zero_table(3);
  t[0][1] = unit(3, 2);  // missing the mirrored entry
  CHECK_THROWS_AS(LieAlgebra::validate("bad", t), AntisymmetryViolation);

  // [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e1 breaks Jacobi: the cyclic sum over
  // (e1,e2,e3) is [e1,[e2,e3]] + [e2,[e3,e1]] + [e3,[e1,e2]]
  //             = [e1,e1] + [e2,e1] + [e3,e3] = -e3.
  Table bad = zero_table(3);
  set_bracket(bad, 0, 1, unit(3, 2));
  set_bracket(bad, 1, 2, unit(3, 0));
  set_bracket(bad, 2, 0, unit(3, 0));
  CHECK_THROWS_AS(LieAlgebra::validate("bad", bad), JacobiViolation);
}

TEST_CASE("bracket matches the 2x2 matrix oracle on sl2r") {
  LieAlgebra sl2 = load_preset("sl2r").algebra;
  // [E, F] = -2 h0, cross-checked against commutators of actual matrices.
  RationalVector e = unit(3, 1), f = unit(3, 2);
  RationalVector got = sl2.bracket(e, f);
  CHECK(got == unit(3, 0, Rational(-2)));

  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    RationalVector x = random_rational_vector(3, rng);
    RationalVector y = random_rational_vector(3, rng);
    Eigen::Matrix2d mx = sl2_matrix(to_double(x)), my = sl2_matrix(to_double(y));
    Vector oracle = sl2_coordinates(mx * my - my * mx);
    CHECK((to_double(sl2.bracket(x, y)) - oracle).lpNorm<Eigen::Infinity>() <
          1e-12);
    CHECK(sl2.bracket(x, x).isZero(Rational(0)));
  }
}

TEST_CASE("su2 bracket table reads off") {
  LieAlgebra su2 = load_preset("su2").algebra;
  CHECK(su2.bracket(unit(3, 0), unit(3, 1)) == unit(3, 2));
  CHECK_THROWS_AS(su2.bracket(RationalVector::Zero(2), unit(3, 0)),
                  DimensionMismatch);
}

TEST_CASE("killing form values") {
  LieAlgebra su2 = load_preset("su2").algebra;
  BilinearForm k = killing_form(su2);
  CHECK(k.matrix == RationalMatrix(Rational(-2) * RationalMatrix::Identity(3, 3)));

  LieAlgebra ab = LieAlgebra::validate("ab2", zero_table(2));
  CHECK(killing_form(ab).matrix.isZero(Rational(0)));

  // sl2r: diagonal with signature (-,+,+).
  BilinearForm ks = killing_form(load_preset("sl2r").algebra);
  CHECK(ks.matrix(0, 0) < 0);
  CHECK(ks.matrix(1, 1) > 0);
  CHECK(ks.matrix(2, 2) > 0);
  CHECK(ks.matrix(0, 1) == 0);
  CHECK(ks.matrix(0, 2) == 0);
  CHECK(ks.matrix(1, 2) == 0);
}

TEST_CASE("killing form is ad-invariant") {
  for (const char* name : {"sl2r", "su2", "product_halfplane_split"}) {
    LieAlgebra l = load_preset(name).algebra;
    BilinearForm k = killing_form(l);
    std::mt19937 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
      RationalVector x = random_rational_vector((int)l.dim(), rng);
      RationalVector y = random_rational_vector((int)l.dim(), rng);
      RationalVector z = random_rational_vector((int)l.dim(), rng);
      Rational lhs = k.eval(l.bracket(z, x), y) + k.eval(x, l.bracket(z, y));
      CHECK(lhs == 0);
    }
  }
}

TEST_CASE("adjoint is linear and a homomorphism") {
  LieAlgebra su2 = load_preset("su2").algebra;
  RationalMatrix ad1 = su2.adjoint(unit(3, 0));
  CHECK(ad1 * unit(3, 1) == unit(3, 2));
  CHECK(ad1 * unit(3, 2) == unit(3, 1, Rational(-1)));
  CHECK((ad1 * unit(3, 0)).isZero(Rational(0)));

  LieAlgebra sl2 = load_preset("sl2r").algebra;
  RationalMatrix adh = sl2.adjoint(unit(3, 0));
  CHECK(adh * unit(3, 1) == unit(3, 2, Rational(2)));
  CHECK(adh * unit(3, 2) == unit(3, 1, Rational(-2)));

  std::mt19937 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    RationalVector x = random_rational_vector(3, rng);
    RationalVector y = random_rational_vector(3, rng);
    RationalMatrix lhs = sl2.adjoint(sl2.bracket(x, y));
    RationalMatrix rhs =
        sl2.adjoint(x) * sl2.adjoint(y) - sl2.adjoint(y) * sl2.adjoint(x);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("subalgebra tests") {
  LieAlgebra sl2 = load_preset("sl2r").algebra;
  RationalMatrix ef(3, 2);
  ef << Rational(0), Rational(0), Rational(1), Rational(0), Rational(0),
      Rational(1);
  CHECK_FALSE(is_subalgebra(sl2, Subspace::from_basis(ef, 3)));

  RationalMatrix h0(3, 1);
  h0 << Rational(1), Rational(0), Rational(0);
  CHECK(is_subalgebra(sl2, Subspace::from_basis(h0, 3)));

  std::mt19937 rng(5);
  RationalMatrix one_dim = random_rational_vector(3, rng);
  if (!one_dim.isZero(Rational(0)))
    CHECK(is_subalgebra(sl2, Subspace::from_basis(one_dim, 3)));
}

TEST_CASE("structure report classifies the presets") {
  StructureReport sl2 = structure_report(load_preset("sl2r").algebra);
  CHECK(sl2.is_semisimple);
  REQUIRE(sl2.simple_ideals.size() == 1);
  CHECK(sl2.compactness_flags[0] == Compactness::noncompact);

  StructureReport su2 = structure_report(load_preset("su2").algebra);
  CHECK(su2.is_semisimple);
  REQUIRE(su2.simple_ideals.size() == 1);
  CHECK(su2.compactness_flags[0] == Compactness::compact);

  StructureReport prod =
      structure_report(load_preset("product_halfplane_split").algebra);
  CHECK(prod.is_semisimple);
  REQUIRE(prod.simple_ideals.size() == 2);
  Eigen::Index total = 0;
  for (const Subspace& ideal : prod.simple_ideals) total += ideal.rank();
  CHECK(total == 6);
  for (Compactness c : prod.compactness_flags)
    CHECK(c == Compactness::noncompact);

  StructureReport ab = structure_report(load_preset("abelian_n").algebra);
  CHECK_FALSE(ab.is_semisimple);
}

TEST_CASE("compact type detection and invariant inner products") {
  CHECK(is_compact_type(load_preset("su2").algebra));
  CHECK(is_compact_type(load_preset("u1").algebra));
  CHECK(is_compact_type(load_preset("abelian_n").algebra));
  CHECK_FALSE(is_compact_type(load_preset("sl2r").algebra));
  CHECK_FALSE(is_compact_type(load_preset("aff1").algebra));

  // The su2 preset basis is orthonormal for the chosen invariant product.
  BilinearForm g = invariant_inner_product(load_preset("su2").algebra);
  CHECK(g.matrix == RationalMatrix(RationalMatrix::Identity(3, 3)));
  CHECK_THROWS_AS(invariant_inner_product(load_preset("sl2r").algebra),
                  NoInvariantInnerProduct);
}

TEST_CASE("classification hypotheses") {
  LieAlgebra sl2 = load_preset("sl2r").algebra;
  LieAlgebra su2 = load_preset("su2").algebra;
  CHECK(check_classification_hypotheses(sl2, su2).applies);
  CHECK_FALSE(check_classification_hypotheses(su2, su2).applies);
  CHECK_FALSE(check_classification_hypotheses(sl2, sl2).applies);
  CHECK(check_classification_hypotheses(
            load_preset("product_halfplane_split").algebra,
            load_preset("u1").algebra)
            .applies);
}
