#ifndef INVMOD_JSON_IO_HPP
#define INVMOD_JSON_IO_HPP

#include <json.hpp>

#include "invmod/moduli.hpp"
#include "invmod/quotient.hpp"
#include "invmod/reductive.hpp"
#include "invmod/structure.hpp"

namespace invmod {

using Json = nlohmann::json;

// Lie algebra schema:
//   {"name": str, "dim": int, "basis": [str],
//    "brackets": [{"i": int, "j": int, "coeffs": ["p/q", ...]}]}
// with i < j only (0-based); omitted pairs mean zero bracket.
Json lie_algebra_to_json(const LieAlgebra& l);
LieAlgebra lie_algebra_from_json(const Json& j);

// Subspace: {"basis": [[rational]]}, one row per basis vector.
Json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const Json& j, Eigen::Index ambient_dim);

Json rational_matrix_to_json(const RationalMatrix& m);
RationalMatrix rational_matrix_from_json(const Json& j);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json split_to_json(const ReductiveSplit& split);

Json structure_report_to_json(const StructureReport& report);
Json hypothesis_report_to_json(const HypothesisReport& report);

// Deterministic serialization: objects with sorted keys (nlohmann's default
// ordering) and doubles printed with 17 significant digits.
std::string dump_deterministic(const Json& j, int indent = 2);

}  // namespace invmod

#endif
