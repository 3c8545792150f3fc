#include "invmod/quotient.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>

#include "invmod/errors.hpp"

namespace invmod {
namespace {

Matrix group_element(const LieAlgebra& k, const Vector& x) {
  return k.adjoint(x).exp();
}

std::vector<Vector> point_columns(const ConnectionPoint& p) {
  std::vector<Vector> cols;
  for (Eigen::Index c = 0; c < p.chi.matrix.cols(); ++c)
    cols.push_back(p.chi.matrix.col(c));
  for (Eigen::Index c = 0; c < p.mu.matrix.cols(); ++c)
    cols.push_back(p.mu.matrix.col(c));
  return cols;
}

Vector stack_point(const ConnectionPoint& p) {
  Vector out(p.chi.matrix.size() + p.mu.matrix.size());
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < p.chi.matrix.cols(); ++j)
    for (Eigen::Index i = 0; i < p.chi.matrix.rows(); ++i)
      out(k++) = p.chi.matrix(i, j);
  for (Eigen::Index j = 0; j < p.mu.matrix.cols(); ++j)
    for (Eigen::Index i = 0; i < p.mu.matrix.rows(); ++i)
      out(k++) = p.mu.matrix(i, j);
  return out;
}

bool is_su2_preset(const LieAlgebra& k) {
  if (k.dim() != 3) return false;
  // Cyclic table [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2, exactly.
  for (int i = 0; i < 3; ++i) {
    RationalMatrix expected = RationalMatrix::Zero(3, 3);
    int j = (i + 1) % 3, m = (i + 2) % 3;
    expected(m, j) = 1;
    expected(j, m) = -1;
    if (k.basis_adjoint(i) != expected) return false;
  }
  return true;
}

// Axis-angle generator x with exp(hat(x)) u = target, for unit u and target.
Vector rotation_aligning(const Vector& u, const Vector& target) {
  Vector axis(3);
  axis << u(1) * target(2) - u(2) * target(1),
          u(2) * target(0) - u(0) * target(2),
          u(0) * target(1) - u(1) * target(0);
  double s = axis.norm(), c = u.dot(target);
  if (s < 1e-14) {
    if (c > 0) return Vector::Zero(3);
    // Opposite vectors: rotate by pi about any orthogonal axis.
    Vector ortho = std::abs(u(0)) < 0.9 ? Vector(Vector::Unit(3, 0))
                                        : Vector(Vector::Unit(3, 1));
    Vector a = (ortho - ortho.dot(u) * u).normalized();
    return M_PI * a;
  }
  return std::atan2(s, c) * (axis / s);
}

// Generator of a rotation matrix (inverse of exp on so(3) via ad = hat).
Vector rotation_log(const Matrix& rot) {
  double c = std::clamp((rot.trace() - 1.0) / 2.0, -1.0, 1.0);
  double angle = std::acos(c);
  if (angle < 1e-12) return Vector::Zero(3);
  if (M_PI - angle < 1e-6) {
    // R = 2 a a^T - I for angle pi.
    Matrix m = (rot + Matrix::Identity(3, 3)) / 2.0;
    Eigen::Index imax;
    m.diagonal().maxCoeff(&imax);
    Vector a = m.col(imax) / std::sqrt(m(imax, imax));
    return M_PI * a.normalized();
  }
  Vector axis(3);
  axis << rot(2, 1) - rot(1, 2), rot(0, 2) - rot(2, 0), rot(1, 0) - rot(0, 1);
  return (angle / (2.0 * std::sin(angle))) * axis;
}

}  // namespace

ConnectionPoint conjugate_point(const LieAlgebra& k, const ConnectionPoint& p,
                                const Vector& x) {
  Matrix g = group_element(k, x);
  return ConnectionPoint{LieHomChi{g * p.chi.matrix}, MuMap{g * p.mu.matrix}};
}

double Fingerprint::distance(const Fingerprint& other) const {
  if (values.size() != other.values.size())
    throw DimensionMismatch("fingerprints have different lengths");
  double out = 0.0;
  for (size_t i = 0; i < values.size(); ++i)
    out = std::max(out, std::abs(values[i] - other.values[i]));
  return out;
}

Fingerprint fingerprint(const LieAlgebra& k, const ConnectionPoint& point,
                        int degree) {
  if (degree < 1 || degree > 4)
    throw Error("fingerprint degree must be between 1 and 4");
  if (!is_compact_type(k))
    throw NoInvariantInnerProduct(
        "fingerprints need an ad-invariant inner product on k");
  Matrix g = to_double(invariant_inner_product(k).matrix);
  std::vector<Vector> v = point_columns(point);
  const size_t n = v.size();
  auto ip = [&](const Vector& a, const Vector& b) { return a.dot(g * b); };

  Fingerprint out;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) out.values.push_back(ip(v[i], v[j]));
  if (degree >= 2)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) {
        Vector b = k.bracket(v[i], v[j]);
        for (size_t m = 0; m < n; ++m) out.values.push_back(ip(b, v[m]));
      }
  if (degree >= 3)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) {
        Vector b = k.bracket(v[i], v[j]);
        for (size_t m = 0; m < n; ++m) {
          Vector bb = k.bracket(b, v[m]);
          for (size_t l = 0; l < n; ++l) out.values.push_back(ip(bb, v[l]));
        }
      }
  if (degree >= 4)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) {
        Vector b1 = k.bracket(v[i], v[j]);
        for (size_t m = 0; m < n; ++m)
          for (size_t l = m + 1; l < n; ++l) {
            Vector b2 = k.bracket(v[m], v[l]);
            out.values.push_back(ip(b1, b2));
          }
      }
  return out;
}

OrbitComparison same_orbit(const LieAlgebra& k, const ConnectionPoint& p,
                           const ConnectionPoint& q, const OrbitOptions& opts) {
  OrbitComparison out;
  if (p.chi.matrix.cols() != q.chi.matrix.cols() ||
      p.mu.matrix.cols() != q.mu.matrix.cols())
    throw DimensionMismatch("points live over different data");
  out.fingerprint_distance = fingerprint(k, p).distance(fingerprint(k, q));
  if (out.fingerprint_distance > opts.fingerprint_tol) {
    out.verdict = OrbitVerdict::different;
    return out;
  }

  const Eigen::Index dk = k.dim();
  Vector target = stack_point(q);
  auto residual = [&](const Vector& x) {
    return Vector(stack_point(conjugate_point(k, p, x)) - target);
  };

  double best = std::numeric_limits<double>::infinity();
  Vector best_x = Vector::Zero(dk);
  for (int s = 0; s < opts.starts; ++s) {
    std::mt19937_64 rng(opts.seed * 1000003ull + static_cast<unsigned>(s));
    std::uniform_real_distribution<double> box(-M_PI, M_PI);
    Vector x(dk);
    for (Eigen::Index i = 0; i < dk; ++i) x(i) = box(rng);
    double cost = residual(x).squaredNorm();
    for (int it = 0; it < opts.max_iter; ++it) {
      Vector r = residual(x);
      if (r.norm() <= opts.match_tol) break;
      Matrix jac(r.size(), dk);
      const double h = 1e-6;
      for (Eigen::Index c = 0; c < dk; ++c) {
        Vector xp = x, xm = x;
        xp(c) += h;
        xm(c) -= h;
        jac.col(c) = (residual(xp) - residual(xm)) / (2 * h);
      }
      Vector step =
          jac.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(Vector(-r));
      double alpha = 1.0;
      bool moved = false;
      for (int half = 0; half < 30; ++half) {
        Vector trial = x + alpha * step;
        double trial_cost = residual(trial).squaredNorm();
        if (trial_cost < cost) {
          x = trial;
          cost = trial_cost;
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!moved) break;
    }
    double dist = residual(x).norm();
    if (dist < best) {
      best = dist;
      best_x = x;
    }
    if (best <= opts.match_tol) break;
  }
  out.matching_distance = best;
  out.generator = best_x;
  out.verdict = best < opts.match_tol ? OrbitVerdict::same : OrbitVerdict::unknown;
  return out;
}

CanonicalPoint canonicalize(const LieAlgebra& k, const ConnectionPoint& point) {
  if (k.is_abelian()) {
    // Conjugation is trivial for u(1)^n.
    return CanonicalPoint{point, Vector::Zero(k.dim())};
  }
  if (!is_su2_preset(k))
    throw UnsupportedTargetAlgebra(
        "closed-form canonicalization supports u(1)^n and the su(2) preset");
  if (point.chi.matrix.cols() != 1)
    throw UnsupportedTargetAlgebra(
        "su(2) canonicalization expects a half-plane-type point (1-dim h0)");

  Vector chi0 = point.chi.matrix.col(0);
  const double t = chi0.norm();
  const double scale = std::max({1.0, t, point.mu.matrix.size()
                                            ? point.mu.matrix.cwiseAbs().maxCoeff()
                                            : 0.0});
  Matrix rot = Matrix::Identity(3, 3);
  if (t > 1e-12 * scale) {
    rot = group_element(k, rotation_aligning(chi0 / t, Vector::Unit(3, 0)));
  } else if (point.mu.matrix.size() &&
             point.mu.matrix.cwiseAbs().maxCoeff() > 0) {
    // chi0 = 0: align mu's largest singular direction with e1 first.
    Eigen::JacobiSVD<Matrix> svd(point.mu.matrix, Eigen::ComputeFullU);
    Vector u = svd.matrixU().col(0);
    Eigen::Index imax;
    u.cwiseAbs().maxCoeff(&imax);
    if (u(imax) < 0) u = -u;
    rot = group_element(k, rotation_aligning(u, Vector::Unit(3, 0)));
  }
  Matrix mu = rot * point.mu.matrix;

  // Residual circle about e1: rows (2,3) of mu rotate as one complex phase.
  double theta = 0.0;
  for (Eigen::Index j = 0; j < mu.cols(); ++j) {
    std::complex<double> z(mu(1, j), mu(2, j));
    if (std::abs(z) > 1e-12 * scale) {
      theta = -std::arg(z);
      break;
    }
  }
  Matrix circle = group_element(k, Vector(theta * Vector::Unit(3, 0)));
  Matrix total = circle * rot;

  CanonicalPoint out;
  out.point.chi = LieHomChi{total * point.chi.matrix};
  out.point.mu = MuMap{total * point.mu.matrix};
  out.generator = rotation_log(total);
  // Clean the pinned entries so canonical forms compare exactly.
  if (t > 1e-12 * scale) {
    out.point.chi.matrix.setZero();
    out.point.chi.matrix(0, 0) = t;
  }
  return out;
}

}  // namespace invmod
