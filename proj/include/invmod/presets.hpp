#ifndef INVMOD_PRESETS_HPP
#define INVMOD_PRESETS_HPP

#include <optional>
#include <string>
#include <vector>

#include "invmod/reductive.hpp"

namespace invmod {

struct PresetEntry {
  LieAlgebra algebra;
  std::optional<Subspace> isotropy;
  std::optional<ReductiveSplit> split;
  std::optional<RationalMatrix> j;  // complex structure on s-coordinates
};

// Known names: "sl2r", "su2", "u1", "abelian_n", "aff1", "halfplane_split",
// "product_halfplane_split". Throws UnknownPreset.
PresetEntry load_preset(const std::string& name);

std::vector<std::string> preset_names();

// One stratum of the half-plane moduli description.
struct HalfPlaneStratum {
  std::string description;
  std::string chi_constraint;
  Eigen::Index mu_complex_dim = 0;
  Vector sample_chi0;       // a representative chi0
  ComplexVector sample_a;   // a representative A in k (x) C (empty if mu = 0)
  double eigen_residual = 0.0;  // |[chi0, A] - 2iA| at the sample
};

struct HalfPlaneStratification {
  std::string target;  // "u1" or "su2"
  std::vector<HalfPlaneStratum> strata;
};

// Throws UnsupportedTargetAlgebra unless k is the u(1) or su(2) preset.
HalfPlaneStratification halfplane_moduli(const LieAlgebra& k);

struct EigenStratumResult {
  bool admissible = false;             // 2i is an eigenvalue of ad(chi0)
  ComplexMatrix eigenvector_basis;     // columns span the 2i-eigenspace
};

// Independent brute-force check: complexify ad(chi0), eigensolve, and look
// for the eigenvalue 2i within 1e-9.
EigenStratumResult oracle_eigen_stratum(const LieAlgebra& k, const Vector& chi0);

}  // namespace invmod

#endif
