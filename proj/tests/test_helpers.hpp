#ifndef INVMOD_TEST_HELPERS_HPP
#define INVMOD_TEST_HELPERS_HPP

#include <random>
#include <vector>

#include "invmod/lie_algebra.hpp"

namespace invmod::testing {

using Table = std::vector<std::vector<RationalVector>>;

inline Table zero_table(int n) {
  return Table(n, std::vector<RationalVector>(n, RationalVector::Zero(n)));
}

inline void set_bracket(Table& t, int i, int j, const RationalVector& v) {
  t[i][j] = v;
  t[j][i] = -v;
}

inline RationalVector unit(int n, int i, const Rational& c = Rational(1)) {
  RationalVector v = RationalVector::Zero(n);
  v(i) = c;
  return v;
}

// Random vector of small rationals (numerators in [-9,9], denominators 1..4).
inline RationalVector random_rational_vector(int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  RationalVector v(n);
  for (int i = 0; i < n; ++i) v(i) = Rational(num(rng), den(rng));
  return v;
}

// Independent 2x2-matrix oracle for the sl2r preset basis
// h0 = [[0,-1],[1,0]], E = [[1,0],[0,-1]], F = [[0,1],[1,0]].
inline Eigen::Matrix2d sl2_matrix(const Vector& coords) {
  Eigen::Matrix2d h0, e, f;
  h0 << 0, -1, 1, 0;
  e << 1, 0, 0, -1;
  f << 0, 1, 1, 0;
  return coords(0) * h0 + coords(1) * e + coords(2) * f;
}

inline Vector sl2_coordinates(const Eigen::Matrix2d& m) {
  // m = a*h0 + b*E + c*F with the basis above.
  Vector out(3);
  out << (m(1, 0) - m(0, 1)) / 2.0, (m(0, 0) - m(1, 1)) / 2.0,
      (m(0, 1) + m(1, 0)) / 2.0;
  return out;
}

}  // namespace invmod::testing

#endif
