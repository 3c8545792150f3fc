#include "invmod/lie_algebra.hpp"

#include <sstream>

#include "invmod/errors.hpp"

namespace invmod {

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(boost::multiprecision::mpz_int(s));
    }
    boost::multiprecision::mpz_int p(s.substr(0, slash));
    boost::multiprecision::mpz_int q(s.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("zero denominator");
    return Rational(p, q);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational \"" + s + "\"");
  }
}

std::string format_rational(const Rational& r) {
  std::ostringstream os;
  os << numerator(r) << '/' << denominator(r);
  return os.str();
}

std::optional<RationalVector> exact_coordinates(const RationalMatrix& basis,
                                                const RationalVector& v) {
  Eigen::FullPivLU<RationalMatrix> lu(basis);
  RationalVector x = lu.solve(v);
  if ((basis * x - v).isZero(Rational(0))) return x;
  return std::nullopt;
}

ExactAffineSolution exact_solve_affine(const RationalMatrix& a,
                                       const RationalVector& b) {
  ExactAffineSolution out;
  Eigen::FullPivLU<RationalMatrix> lu(a);
  RationalVector x = lu.solve(b);
  if ((a * x - b).isZero(Rational(0))) {
    out.consistent = true;
    out.particular = x;
    out.kernel = exact_kernel(a);
    return out;
  }
  // Find a left null vector separating b from the column space.
  RationalMatrix left_kernel = exact_kernel(RationalMatrix(a.transpose()));
  for (Eigen::Index c = 0; c < left_kernel.cols(); ++c) {
    RationalVector w = left_kernel.col(c);
    if ((w.transpose() * b)(0, 0) != 0) {
      out.inconsistency_witness = w;
      return out;
    }
  }
  // Unreachable for a genuinely inconsistent system.
  throw Error("exact_solve_affine: inconsistent system without witness");
}

RationalVector exact_min_quadratic_on_affine(const ExactAffineSolution& sol,
                                             const RationalMatrix& q) {
  if (!sol.consistent) throw Error("no solution to minimize over");
  if (sol.kernel.cols() == 0) return sol.particular;
  RationalMatrix h = sol.kernel.transpose() * q * sol.kernel;
  RationalVector g = sol.kernel.transpose() * q * sol.particular;
  Eigen::FullPivLU<RationalMatrix> lu(h);
  RationalVector t = lu.solve(RationalVector(-g));
  if (!(h * t + g).isZero(Rational(0)))
    throw Error("quadratic form is degenerate on the solution set");
  return sol.particular + sol.kernel * t;
}

bool exact_positive_definite(const RationalMatrix& sym) {
  for (Eigen::Index k = 1; k <= sym.rows(); ++k) {
    RationalMatrix minor = sym.topLeftCorner(k, k);
    if (minor.determinant() <= 0) return false;
  }
  return sym.rows() > 0;
}

LieAlgebra LieAlgebra::validate(std::string name,
                                const std::vector<std::vector<RationalVector>>& table,
                                std::vector<std::string> basis_labels) {
  const int n = static_cast<int>(table.size());
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n)
      throw DimensionMismatch("bracket table is not dim x dim");
    for (const auto& entry : row)
      if (entry.size() != n)
        throw DimensionMismatch("bracket table entry is not dim-long");
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m)
        if (table[i][j](m) != -table[j][i](m))
          throw AntisymmetryViolation(i, j, m);

  LieAlgebra l;
  l.name_ = std::move(name);
  l.dim_ = n;
  l.ad_.reserve(n);
  for (int i = 0; i < n; ++i) {
    RationalMatrix ad(n, n);
    for (int j = 0; j < n; ++j) ad.col(j) = table[i][j];
    l.ad_.push_back(std::move(ad));
  }

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        RationalVector sum = l.ad_[i] * table[j][k] + l.ad_[j] * table[k][i] +
                             l.ad_[k] * table[i][j];
        if (!sum.isZero(Rational(0))) {
          std::ostringstream os;
          os << '(';
          for (int m = 0; m < n; ++m)
            os << (m ? "," : "") << format_rational(sum(m));
          os << ')';
          throw JacobiViolation(i, j, k, os.str());
        }
      }

  if (basis_labels.empty())
    for (int i = 0; i < n; ++i) basis_labels.push_back("e" + std::to_string(i + 1));
  if (static_cast<int>(basis_labels.size()) != n)
    throw DimensionMismatch("basis label count does not match dim");
  l.basis_labels_ = std::move(basis_labels);

  l.ad_double_.reserve(n);
  for (const auto& ad : l.ad_) l.ad_double_.push_back(to_double(ad));
  return l;
}

RationalVector LieAlgebra::bracket(const RationalVector& x,
                                   const RationalVector& y) const {
  if (x.size() != dim_ || y.size() != dim_)
    throw DimensionMismatch("bracket arguments must have length dim");
  RationalVector out = RationalVector::Zero(dim_);
  for (Eigen::Index i = 0; i < dim_; ++i)
    if (x(i) != 0) out += x(i) * (ad_[i] * y);
  return out;
}

RationalMatrix LieAlgebra::adjoint(const RationalVector& x) const {
  if (x.size() != dim_)
    throw DimensionMismatch("adjoint argument must have length dim");
  RationalMatrix out = RationalMatrix::Zero(dim_, dim_);
  for (Eigen::Index i = 0; i < dim_; ++i)
    if (x(i) != 0) out += x(i) * ad_[i];
  return out;
}

Matrix LieAlgebra::adjoint(const Vector& x) const {
  if (x.size() != dim_)
    throw DimensionMismatch("adjoint argument must have length dim");
  Matrix out = Matrix::Zero(dim_, dim_);
  for (Eigen::Index i = 0; i < dim_; ++i) out += x(i) * ad_double_[i];
  return out;
}

Vector LieAlgebra::bracket(const Vector& x, const Vector& y) const {
  return adjoint(x) * y;
}

bool LieAlgebra::is_abelian() const {
  for (const auto& ad : ad_)
    if (!ad.isZero(Rational(0))) return false;
  return true;
}

Subspace Subspace::from_basis(const RationalMatrix& basis, Eigen::Index ambient_dim) {
  if (basis.rows() != ambient_dim)
    throw DimensionMismatch("subspace basis has wrong ambient dimension");
  if (exact_rank(basis) != basis.cols())
    throw Error("subspace basis columns are linearly dependent");
  return Subspace{basis};
}

BilinearForm killing_form(const LieAlgebra& l) {
  const Eigen::Index n = l.dim();
  RationalMatrix k(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      Rational tr = (l.basis_adjoint(i) * l.basis_adjoint(j)).trace();
      k(i, j) = tr;
      k(j, i) = tr;
    }
  return BilinearForm{k};
}

bool is_subalgebra(const LieAlgebra& l, const Subspace& s) {
  for (Eigen::Index p = 0; p < s.rank(); ++p)
    for (Eigen::Index q = p + 1; q < s.rank(); ++q) {
      RationalVector b = l.bracket(RationalVector(s.basis.col(p)),
                                   RationalVector(s.basis.col(q)));
      if (!s.contains(b)) return false;
    }
  return true;
}

Subspace center(const LieAlgebra& l) {
  const Eigen::Index n = l.dim();
  RationalMatrix stacked(n * n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    // x is central iff ad(e_i) x = 0 for all i (antisymmetry).
    stacked.block(i * n, 0, n, n) = l.basis_adjoint(i);
  }
  return Subspace{exact_kernel(stacked)};
}

Subspace derived_subalgebra(const LieAlgebra& l) {
  const Eigen::Index n = l.dim();
  RationalMatrix gens(n, n * (n - 1) / 2);
  Eigen::Index c = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      gens.col(c++) = l.basis_adjoint(i).col(j);
  if (gens.cols() == 0 || exact_rank(gens) == 0)
    return Subspace{RationalMatrix(n, 0)};
  Eigen::FullPivLU<RationalMatrix> lu(gens);
  return Subspace{lu.image(gens)};
}

bool is_compact_type(const LieAlgebra& l) {
  Subspace z = center(l);
  Subspace d = derived_subalgebra(l);
  if (z.rank() + d.rank() != l.dim()) return false;
  RationalMatrix joint(l.dim(), z.rank() + d.rank());
  joint << z.basis, d.basis;
  if (exact_rank(joint) != l.dim()) return false;
  if (d.rank() == 0) return true;  // abelian
  BilinearForm k = killing_form(l);
  RationalMatrix restricted = d.basis.transpose() * k.matrix * d.basis;
  return exact_negative_definite(restricted);
}

BilinearForm invariant_inner_product(const LieAlgebra& l) {
  const Eigen::Index n = l.dim();
  // ad(e_i)^T G + G ad(e_i) = 0 for all i, as a linear system in vec(G).
  RationalMatrix id = RationalMatrix::Identity(n, n);
  RationalMatrix system(n * n * l.dim(), n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const RationalMatrix& ad = l.basis_adjoint(i);
    system.block(i * n * n, 0, n * n, n * n) =
        kron(id, RationalMatrix(ad.transpose())) +
        kron(RationalMatrix(ad.transpose()), id);
  }
  ExactAffineSolution sol =
      exact_solve_affine(system, RationalVector::Zero(system.rows()));
  // Pick the invariant form closest to the identity: minimize |G - I|_F^2
  // over the solution space (shift by the identity target).
  RationalMatrix basis = sol.kernel;
  if (basis.cols() == 0) throw NoInvariantInnerProduct("no invariant form at all");
  RationalVector target = vec(id);
  RationalMatrix gram = basis.transpose() * basis;
  RationalVector rhs = basis.transpose() * target;
  RationalVector coeffs = Eigen::FullPivLU<RationalMatrix>(gram).solve(rhs);
  RationalMatrix g = unvec(basis * coeffs, n, n);
  g = ((g + RationalMatrix(g.transpose())) / Rational(2)).eval();
  if (!exact_positive_definite(g))
    throw NoInvariantInnerProduct(
        "no positive definite ad-invariant form near the identity");
  return BilinearForm{g};
}

}  // namespace invmod
