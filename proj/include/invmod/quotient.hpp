#ifndef INVMOD_QUOTIENT_HPP
#define INVMOD_QUOTIENT_HPP

#include <string>
#include <vector>

#include "invmod/moduli.hpp"

namespace invmod {

// A point of the pre-quotient moduli variety.
struct ConnectionPoint {
  LieHomChi chi;
  MuMap mu;
};

// Conjugates (chi, mu) by exp(ad(x)) for x in k-coordinates.
ConnectionPoint conjugate_point(const LieAlgebra& k, const ConnectionPoint& p,
                                const Vector& x);

struct Fingerprint {
  std::vector<double> values;

  double distance(const Fingerprint& other) const;
};

// Ordered vector of conjugation invariants: inner products and bracket-word
// contractions of the chi- and mu-columns up to the given word degree,
// computed with the deterministic ad-invariant inner product on k.
// Throws NoInvariantInnerProduct when k is not of compact type.
Fingerprint fingerprint(const LieAlgebra& k, const ConnectionPoint& point,
                        int degree = 3);

enum class OrbitVerdict { same, different, unknown };

struct OrbitComparison {
  OrbitVerdict verdict = OrbitVerdict::unknown;
  double fingerprint_distance = 0.0;
  double matching_distance = 0.0;  // best |g.p - q| found, when attempted
  Vector generator;                // x with exp(ad x).p closest to q
};

struct OrbitOptions {
  unsigned seed = 0;
  int starts = 16;
  int max_iter = 400;
  double fingerprint_tol = 1e-6;
  double match_tol = 1e-8;
};

// Fingerprint screen first, then seeded multistart descent over exp(ad x).
OrbitComparison same_orbit(const LieAlgebra& k, const ConnectionPoint& p,
                           const ConnectionPoint& q, const OrbitOptions& opts = {});

struct CanonicalPoint {
  ConnectionPoint point;
  Vector generator;  // x in k with exp(ad x) mapping the input to the output
};

// Closed-form canonical representatives: identity for abelian k (u(1)^n);
// for the su(2) preset, chi0 is rotated onto t*e1 (t >= 0) and the residual
// stabilizer circle makes the leading mu-coordinate real nonnegative.
// Throws UnsupportedTargetAlgebra otherwise.
CanonicalPoint canonicalize(const LieAlgebra& k, const ConnectionPoint& point);

}  // namespace invmod

#endif
