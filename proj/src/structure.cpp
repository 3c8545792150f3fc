#include "invmod/structure.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>

#include "invmod/errors.hpp"

namespace invmod {
namespace {

// Exact commutant of the adjoint representation: { M | M ad(e_i) = ad(e_i) M }.
RationalMatrix adjoint_commutant(const LieAlgebra& l) {
  const Eigen::Index n = l.dim();
  RationalMatrix id = RationalMatrix::Identity(n, n);
  RationalMatrix system(n * n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const RationalMatrix& ad = l.basis_adjoint(i);
    system.block(i * n * n, 0, n * n, n * n) =
        kron(RationalMatrix(ad.transpose()), id) - kron(id, ad);
  }
  return exact_kernel(system);
}

// Nearest rational with bounded denominator (continued fraction expansion).
Rational snap_rational(double x, long max_den = 1000000) {
  bool neg = x < 0;
  double v = std::abs(x);
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(frac);
    if (fl > 1e18) break;
    long a = static_cast<long>(fl);
    long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double rem = frac - fl;
    if (rem < 1e-13) break;
    frac = 1.0 / rem;
  }
  Rational r(p1, q1 == 0 ? 1 : q1);
  return neg ? Rational(-r) : r;
}

bool ad_invariant(const LieAlgebra& l, const RationalMatrix& basis) {
  for (Eigen::Index i = 0; i < l.dim(); ++i)
    for (Eigen::Index c = 0; c < basis.cols(); ++c)
      if (!in_column_span(basis, RationalVector(l.basis_adjoint(i) * basis.col(c))))
        return false;
  return true;
}

}  // namespace

bool StructureReport::all_summands_noncompact() const {
  if (!is_semisimple || simple_ideals.empty()) return false;
  return std::all_of(compactness_flags.begin(), compactness_flags.end(),
                     [](Compactness c) { return c == Compactness::noncompact; });
}

StructureReport structure_report(const LieAlgebra& l, unsigned seed) {
  StructureReport report;
  BilinearForm k = killing_form(l);
  report.is_semisimple = exact_rank(k.matrix) == l.dim();
  if (!report.is_semisimple) {
    report.note = "Killing form is degenerate; not semisimple, compactness of "
                  "summands undetermined";
    return report;
  }

  RationalMatrix commutant = adjoint_commutant(l);
  const Eigen::Index num_ideals = commutant.cols();
  const Eigen::Index n = l.dim();

  std::vector<Subspace> ideals;
  if (num_ideals == 1) {
    ideals.push_back(Subspace{RationalMatrix::Identity(n, n)});
  } else {
    std::mt19937 rng(seed);
    bool done = false;
    for (int attempt = 0; attempt < 24 && !done; ++attempt) {
      std::uniform_int_distribution<int> coeff(-12, 12);
      RationalMatrix candidate = RationalMatrix::Zero(n, n);
      for (Eigen::Index c = 0; c < num_ideals; ++c)
        candidate += Rational(coeff(rng)) * unvec(RationalVector(commutant.col(c)), n, n);

      Eigen::EigenSolver<Matrix> es(to_double(candidate));
      if (es.info() != Eigen::Success) continue;
      std::vector<double> evs;
      bool real_spectrum = true;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(es.eigenvalues()(i).imag()) > 1e-8) real_spectrum = false;
        evs.push_back(es.eigenvalues()(i).real());
      }
      if (!real_spectrum) continue;
      std::sort(evs.begin(), evs.end());
      std::vector<double> clusters;
      for (double e : evs)
        if (clusters.empty() || e - clusters.back() > 1e-8) clusters.push_back(e);
      if (static_cast<Eigen::Index>(clusters.size()) != num_ideals) continue;

      ideals.clear();
      Eigen::Index total = 0;
      bool valid = true;
      for (double e : clusters) {
        Rational lambda = snap_rational(e);
        RationalMatrix shifted =
            candidate - lambda * RationalMatrix::Identity(n, n);
        RationalMatrix eigenspace = exact_kernel(shifted);
        if (eigenspace.cols() == 0 || !ad_invariant(l, eigenspace)) {
          valid = false;
          break;
        }
        total += eigenspace.cols();
        ideals.push_back(Subspace{eigenspace});
      }
      if (!valid || total != n) continue;
      // Pairwise Killing orthogonality seals the decomposition.
      for (size_t p = 0; p < ideals.size() && valid; ++p)
        for (size_t q = p + 1; q < ideals.size() && valid; ++q)
          if (!(ideals[p].basis.transpose() * k.matrix * ideals[q].basis)
                   .isZero(Rational(0)))
            valid = false;
      done = valid;
    }
    if (!done)
      throw DecompositionFailed(
          "ideal splitting did not stabilize after 24 seeded attempts");
  }

  for (const Subspace& ideal : ideals) {
    RationalMatrix restricted = ideal.basis.transpose() * k.matrix * ideal.basis;
    report.compactness_flags.push_back(exact_negative_definite(restricted)
                                           ? Compactness::compact
                                           : Compactness::noncompact);
  }
  report.simple_ideals = std::move(ideals);
  return report;
}

HypothesisReport check_classification_hypotheses(const LieAlgebra& a,
                                                 const LieAlgebra& k,
                                                 unsigned seed) {
  HypothesisReport out;
  out.base = structure_report(a, seed);
  out.k_compact = is_compact_type(k);
  if (!out.base.is_semisimple) {
    out.reason = "base algebra is not semisimple";
  } else if (!out.base.all_summands_noncompact()) {
    out.reason = "some simple summand of the base algebra is compact";
  } else if (!out.k_compact) {
    out.reason = "target algebra is not of compact type";
  } else {
    out.applies = true;
    out.reason = "semisimple base, all simple summands noncompact, compact target";
  }
  return out;
}

}  // namespace invmod
