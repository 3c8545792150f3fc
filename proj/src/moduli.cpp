#include "invmod/moduli.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <random>
#include <thread>

#include "invmod/errors.hpp"

namespace invmod {
namespace {

// Double-precision tables shared by the curvature and solver paths.
struct SplitTables {
  Eigen::Index r = 0;                      // dim s
  std::vector<Matrix> isotropy_action;     // ad(h_i)|_s, r x r
  std::vector<std::vector<Vector>> s_brackets;  // s-coords of proj_s [s_p, s_q]

  explicit SplitTables(const ReductiveSplit& split) : r(split.dim_s()) {
    for (Eigen::Index i = 0; i < split.dim_h(); ++i)
      isotropy_action.push_back(to_double(split.isotropy_action_on_s(i)));
    s_brackets.assign(r, std::vector<Vector>(r, Vector::Zero(r)));
    for (Eigen::Index p = 0; p < r; ++p)
      for (Eigen::Index q = p + 1; q < r; ++q) {
        Vector b = to_double(split.s_bracket(p, q));
        s_brackets[p][q] = b;
        s_brackets[q][p] = -b;
      }
  }

  Vector bracket(const Vector& x, const Vector& y) const {
    Vector out = Vector::Zero(r);
    for (Eigen::Index p = 0; p < r; ++p)
      for (Eigen::Index q = 0; q < r; ++q)
        if (x(p) != 0.0 && y(q) != 0.0) out += x(p) * y(q) * s_brackets[p][q];
    return out;
  }
};

Vector chi_of(const LieHomChi& chi, const Vector& h_coords) {
  return chi.matrix * h_coords;
}

int env_thread_cap() {
  const char* raw = std::getenv("INVMOD_THREADS");
  if (!raw) return 1;
  int n = std::atoi(raw);
  return n > 0 ? n : 1;
}

}  // namespace

LieHomChi validate_chi(const LieAlgebra& algebra, const Subspace& h0,
                       const LieAlgebra& k, const Matrix& matrix) {
  const Eigen::Index m = h0.rank();
  if (matrix.rows() != k.dim() || matrix.cols() != m)
    throw DimensionMismatch("chi matrix must be (dim k) x (dim h0)");
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i + 1; j < m; ++j) {
      RationalVector bracket = algebra.bracket(RationalVector(h0.basis.col(i)),
                                               RationalVector(h0.basis.col(j)));
      auto coords = exact_coordinates(h0.basis, bracket);
      if (!coords) throw NotASubalgebra("h0 is not a subalgebra");
      Vector lhs = matrix * to_double(*coords);
      Vector rhs = k.bracket(Vector(matrix.col(i)), Vector(matrix.col(j)));
      if ((lhs - rhs).lpNorm<Eigen::Infinity>() > 1e-12)
        throw NotAHomomorphism(static_cast<int>(i), static_cast<int>(j));
    }
  return LieHomChi{matrix};
}

Matrix IntertwinerSpace::materialize(const Vector& coords) const {
  if (coords.size() != dim())
    throw DimensionMismatch("coordinate count does not match dim S");
  if (basis.empty()) return Matrix();
  Matrix out = Matrix::Zero(basis.front().matrix.rows(), basis.front().matrix.cols());
  for (Eigen::Index a = 0; a < dim(); ++a) out += coords(a) * basis[a].matrix;
  return out;
}

IntertwinerSpace intertwiner_space(const ReductiveSplit& split,
                                   const LieAlgebra& k, const LieHomChi& chi) {
  const Eigen::Index r = split.dim_s();
  const Eigen::Index dk = k.dim();
  const Eigen::Index m = split.dim_h();
  const Eigen::Index cols = dk * r;

  IntertwinerSpace out;
  if (m == 0) {
    for (Eigen::Index j = 0; j < r; ++j)
      for (Eigen::Index i = 0; i < dk; ++i) {
        Matrix e = Matrix::Zero(dk, r);
        e(i, j) = 1.0;
        out.basis.push_back(MuMap{e});
      }
    return out;
  }

  SplitTables tables(split);
  Matrix stacked(m * cols, cols);
  Matrix id_dk = Matrix::Identity(dk, dk);
  Matrix id_r = Matrix::Identity(r, r);
  for (Eigen::Index h = 0; h < m; ++h) {
    Matrix ad_chi = k.adjoint(Vector(chi.matrix.col(h)));
    // vec(mu A - B mu) = (A^T kron I - I kron B) vec(mu)
    const Matrix& a = tables.isotropy_action[h];
    Matrix block(cols, cols);
    for (Eigen::Index cj = 0; cj < r; ++cj)
      for (Eigen::Index ci = 0; ci < r; ++ci)
        block.block(ci * dk, cj * dk, dk, dk) =
            a(cj, ci) * id_dk - (ci == cj ? 1.0 : 0.0) * ad_chi;
    stacked.middleRows(h * cols, cols) = block;
  }

  Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeFullV);
  double sigma_max = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  double threshold = 1e-10 * std::max(sigma_max, 1.0);
  for (Eigen::Index c = 0; c < cols; ++c) {
    double sigma = c < svd.singularValues().size() ? svd.singularValues()(c) : 0.0;
    if (sigma <= threshold) {
      Matrix mu(dk, r);
      for (Eigen::Index j = 0; j < r; ++j)
        mu.col(j) = svd.matrixV().col(c).segment(j * dk, dk);
      out.basis.push_back(MuMap{mu});
    }
  }
  return out;
}

ConnectionSpace connection_space_description(const ReductiveSplit& split,
                                             const LieAlgebra& k,
                                             const LieHomChi& chi) {
  ConnectionSpace out;
  out.reference = MuMap{Matrix::Zero(k.dim(), split.dim_s())};
  out.directions = intertwiner_space(split, k, chi);
  return out;
}

Eigen::Index CurvatureTensor::pair_index(Eigen::Index p, Eigen::Index q,
                                         Eigen::Index r) {
  // p < q; pairs enumerated row by row.
  return p * r - p * (p + 1) / 2 + (q - p - 1);
}

Vector CurvatureTensor::at(Eigen::Index p, Eigen::Index q) const {
  if (p == q) return Vector::Zero(values.rows());
  if (p < q) return values.col(pair_index(p, q, s_dim));
  return -values.col(pair_index(q, p, s_dim));
}

double CurvatureTensor::max_norm() const {
  return values.size() ? values.cwiseAbs().maxCoeff() : 0.0;
}

CurvatureTensor curvature_mu(const ReductiveSplit& split, const LieAlgebra& k,
                             const MuMap& mu) {
  const Eigen::Index r = split.dim_s();
  if (mu.matrix.rows() != k.dim() || mu.matrix.cols() != r)
    throw DimensionMismatch("mu matrix must be (dim k) x (dim s)");
  SplitTables tables(split);
  CurvatureTensor out;
  out.s_dim = r;
  out.values = Matrix::Zero(k.dim(), r * (r - 1) / 2);
  for (Eigen::Index p = 0; p < r; ++p)
    for (Eigen::Index q = p + 1; q < r; ++q)
      out.values.col(CurvatureTensor::pair_index(p, q, r)) =
          -mu.matrix * tables.s_brackets[p][q] +
          k.bracket(Vector(mu.matrix.col(p)), Vector(mu.matrix.col(q)));
  return out;
}

Vector curvature_eval(const ReductiveSplit& split, const LieAlgebra& k,
                      const MuMap& mu, const Vector& x, const Vector& y) {
  SplitTables tables(split);
  return -mu.matrix * tables.bracket(x, y) +
         k.bracket(Vector(mu.matrix * x), Vector(mu.matrix * y));
}

Type11Defect type11_defect(const ComplexStructure& cs, const LieAlgebra& k,
                           const MuMap& mu) {
  const ReductiveSplit& split = cs.split;
  const Eigen::Index r = split.dim_s();
  if (mu.matrix.cols() != r || mu.matrix.rows() != k.dim())
    throw SplitMismatch("mu is not defined over this split");
  SplitTables tables(split);
  Matrix j = to_double(cs.j);

  CurvatureTensor tensor;
  tensor.s_dim = r;
  tensor.values = Matrix::Zero(k.dim(), r * (r - 1) / 2);
  for (Eigen::Index p = 0; p < r; ++p)
    for (Eigen::Index q = p + 1; q < r; ++q) {
      Vector jp = j.col(p), jq = j.col(q);
      Vector value =
          -mu.matrix * tables.s_brackets[p][q] +
          k.bracket(Vector(mu.matrix.col(p)), Vector(mu.matrix.col(q))) +
          mu.matrix * tables.bracket(jp, jq) -
          k.bracket(Vector(mu.matrix * jp), Vector(mu.matrix * jq));
      tensor.values.col(CurvatureTensor::pair_index(p, q, r)) = value;
    }
  return Type11Defect{tensor, tensor.max_norm()};
}

EquivarianceCheck equivariance_check(const ReductiveSplit& split,
                                     const LieAlgebra& k, const LieHomChi& chi,
                                     const MuMap& mu, double tol) {
  SplitTables tables(split);
  double worst = 0.0;
  for (Eigen::Index h = 0; h < split.dim_h(); ++h) {
    Matrix lhs = mu.matrix * tables.isotropy_action[h];
    Matrix rhs = k.adjoint(Vector(chi.matrix.col(h))) * mu.matrix;
    double violation =
        (lhs - rhs).size() ? (lhs - rhs).cwiseAbs().maxCoeff() : 0.0;
    worst = std::max(worst, violation);
  }
  return EquivarianceCheck{worst <= tol, worst};
}

namespace {

// Residual and Jacobian of F_J over intertwiner coordinates.
struct LocusSystem {
  const LieAlgebra& k;
  SplitTables tables;
  Matrix j;
  std::vector<Matrix> basis;  // intertwiner basis matrices
  Eigen::Index r, dk, pairs;

  LocusSystem(const ComplexStructure& cs, const LieAlgebra& k_,
              const IntertwinerSpace& space)
      : k(k_), tables(cs.split), j(to_double(cs.j)) {
    for (const MuMap& b : space.basis) basis.push_back(b.matrix);
    r = cs.split.dim_s();
    dk = k.dim();
    pairs = r * (r - 1) / 2;
  }

  Matrix materialize(const Vector& t) const {
    Matrix mu = Matrix::Zero(dk, r);
    for (Eigen::Index a = 0; a < t.size(); ++a) mu += t(a) * basis[a];
    return mu;
  }

  Vector pair_value(const Matrix& mu, Eigen::Index p, Eigen::Index q) const {
    Vector jp = j.col(p), jq = j.col(q);
    return -mu * tables.s_brackets[p][q] +
           k.bracket(Vector(mu.col(p)), Vector(mu.col(q))) +
           mu * tables.bracket(jp, jq) -
           k.bracket(Vector(mu * jp), Vector(mu * jq));
  }

  Vector residual(const Vector& t) const {
    Matrix mu = materialize(t);
    Vector out(pairs * dk);
    Eigen::Index idx = 0;
    for (Eigen::Index p = 0; p < r; ++p)
      for (Eigen::Index q = p + 1; q < r; ++q)
        out.segment((idx++) * dk, dk) = pair_value(mu, p, q);
    return out;
  }

  Matrix jacobian(const Vector& t) const {
    Matrix mu = materialize(t);
    Matrix out(pairs * dk, t.size());
    for (Eigen::Index a = 0; a < t.size(); ++a) {
      const Matrix& d = basis[a];
      Eigen::Index idx = 0;
      for (Eigen::Index p = 0; p < r; ++p)
        for (Eigen::Index q = p + 1; q < r; ++q) {
          Vector jp = j.col(p), jq = j.col(q);
          Vector col =
              -d * tables.s_brackets[p][q] +
              k.bracket(Vector(d.col(p)), Vector(mu.col(q))) +
              k.bracket(Vector(mu.col(p)), Vector(d.col(q))) +
              d * tables.bracket(jp, jq) -
              k.bracket(Vector(d * jp), Vector(mu * jq)) -
              k.bracket(Vector(mu * jp), Vector(d * jq));
          out.block((idx++) * dk, a, dk, 1) = col;
        }
    }
    return out;
  }
};

}  // namespace

LocusResult solve_holomorphic_locus(const ComplexStructure& cs,
                                    const LieAlgebra& k, const LieHomChi& chi,
                                    const SolverOptions& opts) {
  LocusResult result;
  result.space = intertwiner_space(cs.split, k, chi);
  const Eigen::Index dim_s = result.space.dim();
  const Eigen::Index dk = k.dim();
  const Eigen::Index r = cs.split.dim_s();

  if (dim_s == 0) {
    LocusSolution zero;
    zero.coords = Vector();
    zero.mu = MuMap{Matrix::Zero(dk, r)};
    zero.tangent = Matrix::Zero(0, 0);
    result.solutions.push_back(std::move(zero));
    return result;
  }

  LocusSystem system(cs, k, result.space);
  std::vector<std::optional<Vector>> converged(opts.starts);

  auto run_start = [&](int s) {
    std::mt19937_64 rng(opts.seed * 1000003ull + static_cast<unsigned>(s));
    std::uniform_real_distribution<double> box(-1.0, 1.0);
    Vector t(dim_s);
    for (Eigen::Index a = 0; a < dim_s; ++a) t(a) = box(rng);
    double cost = system.residual(t).squaredNorm();
    for (int it = 0; it < opts.max_iter; ++it) {
      Vector res = system.residual(t);
      if (res.lpNorm<Eigen::Infinity>() <= opts.tol) break;
      Matrix jac = system.jacobian(t);
      Vector step = jac.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV)
                        .solve(Vector(-res));
      double alpha = 1.0;
      bool moved = false;
      for (int half = 0; half < 25; ++half) {
        Vector trial = t + alpha * step;
        double trial_cost = system.residual(trial).squaredNorm();
        if (trial_cost < cost) {
          t = trial;
          cost = trial_cost;
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!moved) break;
    }
    if (system.residual(t).lpNorm<Eigen::Infinity>() <= opts.tol) converged[s] = t;
  };

  int threads = std::min(env_thread_cap(), opts.starts);
  if (threads <= 1) {
    for (int s = 0; s < opts.starts; ++s) run_start(s);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&] {
        for (int s = next++; s < opts.starts; s = next++) run_start(s);
      });
    for (auto& th : pool) th.join();
  }

  std::vector<Vector> kept;
  for (const auto& t : converged) {
    if (!t) {
      ++result.failed_starts;
      continue;
    }
    bool duplicate = false;
    for (const Vector& other : kept)
      if ((*t - other).lpNorm<Eigen::Infinity>() <= 1e-6) duplicate = true;
    if (!duplicate) kept.push_back(*t);
  }
  std::sort(kept.begin(), kept.end(), [&](const Vector& a, const Vector& b) {
    double ra = system.residual(a).lpNorm<Eigen::Infinity>();
    double rb = system.residual(b).lpNorm<Eigen::Infinity>();
    if (ra != rb) return ra < rb;
    for (Eigen::Index i = 0; i < a.size(); ++i)
      if (a(i) != b(i)) return a(i) < b(i);
    return false;
  });

  for (const Vector& t : kept) {
    LocusSolution sol;
    sol.coords = t;
    sol.mu = MuMap{system.materialize(t)};
    sol.residual = system.residual(t).lpNorm<Eigen::Infinity>();
    Matrix jac = system.jacobian(t);
    Eigen::JacobiSVD<Matrix> svd(jac, Eigen::ComputeFullV);
    double sigma_max =
        svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    double threshold = 1e-8 * std::max(sigma_max, 1.0);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > threshold) ++rank;
    sol.local_dim = dim_s - rank;
    sol.tangent = svd.matrixV().rightCols(sol.local_dim);
    result.solutions.push_back(std::move(sol));
  }
  return result;
}

}  // namespace invmod
