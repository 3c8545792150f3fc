#ifndef INVMOD_TYPES_HPP
#define INVMOD_TYPES_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <string>

namespace invmod {

// Exact scalar used for structure constants, validation and rank tests.
using Rational = boost::multiprecision::mpq_rational;

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline Matrix to_double(const RationalMatrix& m) {
  Matrix out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      out(i, j) = m(i, j).convert_to<double>();
  return out;
}

inline Vector to_double(const RationalVector& v) {
  Vector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(i).convert_to<double>();
  return out;
}

// Parses "p/q" or "p". Throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& s);

// Serializes as "p/q", always with an explicit denominator.
std::string format_rational(const Rational& r);

}  // namespace invmod

#endif
