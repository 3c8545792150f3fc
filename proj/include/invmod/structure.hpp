#ifndef INVMOD_STRUCTURE_HPP
#define INVMOD_STRUCTURE_HPP

#include <string>
#include <vector>

#include "invmod/lie_algebra.hpp"

namespace invmod {

enum class Compactness { compact, noncompact, undetermined };

struct StructureReport {
  bool is_semisimple = false;
  std::vector<Subspace> simple_ideals;          // pairwise Killing-orthogonal
  std::vector<Compactness> compactness_flags;   // one per ideal
  std::string note;

  bool all_summands_noncompact() const;
};

// Semisimplicity via exact nondegeneracy of the Killing form; simple ideals
// split off as eigenspaces of a random element of the exact commutant of the
// adjoint representation (retried on eigenvalue collision, then verified
// exactly). Throws DecompositionFailed when the splitting does not stabilize.
StructureReport structure_report(const LieAlgebra& l, unsigned seed = 0);

// Hypothesis set of the moduli classification: a semisimple with only
// noncompact simple summands, target algebra of compact type.
struct HypothesisReport {
  StructureReport base;         // for a
  bool k_compact = false;
  bool applies = false;
  std::string reason;
};

HypothesisReport check_classification_hypotheses(const LieAlgebra& a,
                                                 const LieAlgebra& k,
                                                 unsigned seed = 0);

}  // namespace invmod

#endif
