#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "invmod/errors.hpp"
#include "invmod/json_io.hpp"
#include "invmod/presets.hpp"

namespace {

using namespace invmod;

constexpr const char* kCoverCaveat =
    "results are computed at the Lie algebra level and classify invariant "
    "structures for the simply connected cover of the acting group; global "
    "distinctions between covers (e.g. center quotients) are not visible";

struct Options {
  std::string algebra, isotropy, split, chi, mu, j, k, preset;
  std::string format = "json";
  unsigned seed = 0;
  double tol = 1e-10;
  int starts = 64;
  int max_iter = 100;
};

// Exit codes 2 (bad input) and 3 (well-posed but unsatisfiable request).
struct CliError : std::runtime_error {
  int exit_code;
  CliError(int code, const std::string& what)
      : std::runtime_error(what), exit_code(code) {}
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(2, "cannot open \"" + path + "\"");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw CliError(2, "malformed JSON in \"" + path + "\": " + e.what());
  }
}

bool is_preset_name(const std::string& name) {
  for (const std::string& p : preset_names())
    if (p == name) return true;
  return false;
}

LieAlgebra load_algebra(const Options& opts) {
  if (!opts.preset.empty()) return load_preset(opts.preset).algebra;
  if (!opts.algebra.empty())
    return lie_algebra_from_json(read_json_file(opts.algebra));
  throw CliError(2, "need --preset or --algebra");
}

LieAlgebra load_target(const Options& opts) {
  if (opts.k.empty()) throw CliError(2, "need --k (preset name or JSON file)");
  if (is_preset_name(opts.k)) return load_preset(opts.k).algebra;
  return lie_algebra_from_json(read_json_file(opts.k));
}

Subspace load_isotropy(const Options& opts, const LieAlgebra& algebra) {
  if (!opts.isotropy.empty())
    return subspace_from_json(read_json_file(opts.isotropy), algebra.dim());
  if (!opts.preset.empty()) {
    PresetEntry entry = load_preset(opts.preset);
    if (entry.isotropy) return *entry.isotropy;
  }
  throw CliError(2, "need --isotropy (or a preset that carries one)");
}

// A split either comes whole from a preset, from an explicit --split file
// {"isotropy": {...}, "complement": {...}}, or is computed from the isotropy.
ReductiveSplit load_split(const Options& opts) {
  LieAlgebra algebra = load_algebra(opts);
  if (!opts.split.empty()) {
    Json j = read_json_file(opts.split);
    return make_split(algebra,
                      subspace_from_json(j.at("isotropy"), algebra.dim()),
                      subspace_from_json(j.at("complement"), algebra.dim()));
  }
  if (!opts.preset.empty() && opts.isotropy.empty()) {
    PresetEntry entry = load_preset(opts.preset);
    if (entry.split) return *entry.split;
  }
  auto result = find_invariant_complement(algebra, load_isotropy(opts, algebra),
                                          opts.seed);
  if (std::holds_alternative<NoComplement>(result))
    throw CliError(3, "no invariant complement: " +
                          std::get<NoComplement>(result).detail);
  return std::get<ReductiveSplit>(result);
}

RationalMatrix load_complex_structure(const Options& opts,
                                      const ReductiveSplit& split) {
  RationalMatrix j;
  if (!opts.j.empty()) {
    j = rational_matrix_from_json(read_json_file(opts.j));
  } else if (!opts.preset.empty() && load_preset(opts.preset).j) {
    j = *load_preset(opts.preset).j;
  } else {
    throw CliError(2, "need --J (or a preset that carries one)");
  }
  ComplexStructureCheck check = check_complex_structure(split, j);
  if (!check.ok) throw InvalidJ(check.violation);
  return j;
}

Matrix load_map(const std::string& path, const char* what) {
  if (path.empty()) throw CliError(2, std::string("need --") + what);
  Json j = read_json_file(path);
  return matrix_from_json(j.is_object() ? j.at("matrix") : j);
}

Json config_echo(const Options& opts) {
  Json config;
  config["seed"] = opts.seed;
  config["tol"] = opts.tol;
  config["starts"] = opts.starts;
  config["max_iter"] = opts.max_iter;
  config["format"] = opts.format;
  if (!opts.preset.empty()) config["preset"] = opts.preset;
  Json inputs = Json::object();
  if (!opts.algebra.empty()) inputs["algebra"] = opts.algebra;
  if (!opts.isotropy.empty()) inputs["isotropy"] = opts.isotropy;
  if (!opts.split.empty()) inputs["split"] = opts.split;
  if (!opts.chi.empty()) inputs["chi"] = opts.chi;
  if (!opts.mu.empty()) inputs["mu"] = opts.mu;
  if (!opts.j.empty()) inputs["J"] = opts.j;
  if (!opts.k.empty()) inputs["k"] = opts.k;
  if (!inputs.empty()) config["inputs"] = inputs;
  return config;
}

Json rational_vector_to_json(const RationalVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out.push_back(format_rational(v(i)));
  return out;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json curvature_to_json(const CurvatureTensor& tensor) {
  Json pairs = Json::array();
  for (Eigen::Index p = 0; p < tensor.s_dim; ++p)
    for (Eigen::Index q = p + 1; q < tensor.s_dim; ++q) {
      Json entry;
      entry["p"] = static_cast<int>(p);
      entry["q"] = static_cast<int>(q);
      entry["value"] = vector_to_json(tensor.at(p, q));
      pairs.push_back(entry);
    }
  return Json{{"s_dim", static_cast<int>(tensor.s_dim)},
              {"pairs", pairs},
              {"max_norm", tensor.max_norm()}};
}

Json solution_to_json(const LocusSolution& sol) {
  Json out;
  out["coords"] = vector_to_json(sol.coords);
  out["mu"] = Json{{"matrix", matrix_to_json(sol.mu.matrix)}};
  out["residual"] = sol.residual;
  out["local_dim"] = static_cast<int>(sol.local_dim);
  out["tangent"] = matrix_to_json(sol.tangent);
  return out;
}

// --- command payloads -------------------------------------------------------

Json run_validate(const Options& opts, Json& /*warnings*/) {
  LieAlgebra l = load_algebra(opts);
  Json out;
  out["algebra"] = lie_algebra_to_json(l);
  out["is_abelian"] = l.is_abelian();
  out["is_compact_type"] = is_compact_type(l);
  out["structure"] = structure_report_to_json(structure_report(l, opts.seed));
  return out;
}

Json run_complement(const Options& opts, Json& /*warnings*/) {
  LieAlgebra algebra = load_algebra(opts);
  Subspace h0 = load_isotropy(opts, algebra);
  auto result = find_invariant_complement(algebra, h0, opts.seed);
  if (std::holds_alternative<NoComplement>(result)) {
    const NoComplement& no = std::get<NoComplement>(result);
    Json payload;
    payload["no_complement"] =
        Json{{"certificate", rational_vector_to_json(no.certificate)},
             {"detail", no.detail}};
    throw CliError(3, dump_deterministic(payload));
  }
  return Json{{"split", split_to_json(std::get<ReductiveSplit>(result))}};
}

Json run_intertwiners(const Options& opts, Json& /*warnings*/) {
  ReductiveSplit split = load_split(opts);
  LieAlgebra k = load_target(opts);
  LieHomChi chi =
      validate_chi(split.algebra, split.isotropy, k, load_map(opts.chi, "chi"));
  IntertwinerSpace space = intertwiner_space(split, k, chi);
  Json basis = Json::array();
  for (const MuMap& b : space.basis)
    basis.push_back(Json{{"matrix", matrix_to_json(b.matrix)}});
  return Json{{"dim_S", static_cast<int>(space.dim())}, {"basis", basis}};
}

Json run_curvature(const Options& opts, Json& /*warnings*/) {
  ReductiveSplit split = load_split(opts);
  LieAlgebra k = load_target(opts);
  MuMap mu{load_map(opts.mu, "mu")};
  return Json{{"curvature", curvature_to_json(curvature_mu(split, k, mu))}};
}

Json run_type11(const Options& opts, Json& /*warnings*/) {
  ReductiveSplit split = load_split(opts);
  RationalMatrix j = load_complex_structure(opts, split);
  LieAlgebra k = load_target(opts);
  MuMap mu{load_map(opts.mu, "mu")};
  Type11Defect defect = type11_defect(ComplexStructure{split, j}, k, mu);
  Json out;
  out["defect"] = curvature_to_json(defect.tensor);
  out["max_norm"] = defect.max_norm;
  out["is_type11"] = defect.max_norm <= opts.tol;
  return out;
}

Json locus_payload(const Options& opts, const ComplexStructure& cs,
                   const LieAlgebra& k, const LieHomChi& chi) {
  SolverOptions solver;
  solver.seed = opts.seed;
  solver.starts = opts.starts;
  solver.max_iter = opts.max_iter;
  solver.tol = opts.tol;
  LocusResult result = solve_holomorphic_locus(cs, k, chi, solver);
  Json solutions = Json::array();
  for (const LocusSolution& sol : result.solutions)
    solutions.push_back(solution_to_json(sol));
  Json out;
  out["dim_S"] = static_cast<int>(result.space.dim());
  out["failed_starts"] = result.failed_starts;
  out["solutions"] = solutions;
  return out;
}

Json run_holomorphic(const Options& opts, Json& /*warnings*/) {
  ReductiveSplit split = load_split(opts);
  RationalMatrix j = load_complex_structure(opts, split);
  LieAlgebra k = load_target(opts);
  LieHomChi chi =
      validate_chi(split.algebra, split.isotropy, k, load_map(opts.chi, "chi"));
  return locus_payload(opts, ComplexStructure{split, j}, k, chi);
}

Json run_moduli(const Options& opts, Json& warnings) {
  ReductiveSplit split = load_split(opts);
  RationalMatrix j = load_complex_structure(opts, split);
  LieAlgebra k = load_target(opts);
  LieHomChi chi =
      validate_chi(split.algebra, split.isotropy, k, load_map(opts.chi, "chi"));
  Json out = locus_payload(opts, ComplexStructure{split, j}, k, chi);
  for (Json& sol : out["solutions"]) {
    ConnectionPoint point{chi, MuMap{matrix_from_json(sol["mu"]["matrix"])}};
    Json fp = Json::array();
    for (double v : fingerprint(k, point).values) fp.push_back(v);
    sol["fingerprint"] = fp;
    try {
      CanonicalPoint canonical = canonicalize(k, point);
      sol["canonical"] =
          Json{{"chi", Json{{"matrix", matrix_to_json(canonical.point.chi.matrix)}}},
               {"mu", Json{{"matrix", matrix_to_json(canonical.point.mu.matrix)}}},
               {"generator", vector_to_json(canonical.generator)}};
    } catch (const UnsupportedTargetAlgebra& e) {
      bool seen = false;
      for (const Json& w : warnings) seen = seen || w.get<std::string>() == e.what();
      if (!seen) warnings.push_back(e.what());
    }
  }
  return out;
}

Json run_halfplane(const Options& opts, Json& /*warnings*/) {
  HalfPlaneStratification strata = halfplane_moduli(load_target(opts));
  Json list = Json::array();
  for (const HalfPlaneStratum& s : strata.strata) {
    Json entry;
    entry["description"] = s.description;
    entry["chi_constraint"] = s.chi_constraint;
    entry["mu_complex_dim"] = static_cast<int>(s.mu_complex_dim);
    entry["sample_chi0"] = vector_to_json(s.sample_chi0);
    Json a = Json::array();
    for (Eigen::Index i = 0; i < s.sample_a.size(); ++i)
      a.push_back(Json{{"re", s.sample_a(i).real()}, {"im", s.sample_a(i).imag()}});
    entry["sample_A"] = a;
    entry["eigen_residual"] = s.eigen_residual;
    list.push_back(entry);
  }
  return Json{{"target", strata.target}, {"strata", list}};
}

Json run_hypotheses(const Options& opts, Json& /*warnings*/) {
  LieAlgebra a = load_algebra(opts);
  LieAlgebra k = load_target(opts);
  return hypothesis_report_to_json(
      check_classification_hypotheses(a, k, opts.seed));
}

// --- output -----------------------------------------------------------------

void print_table(const Json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      print_table(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(),
                  os);
    if (j.empty()) os << prefix << " = {}\n";
    return;
  }
  if (j.is_array()) {
    int idx = 0;
    for (const Json& item : j)
      print_table(item, prefix + "[" + std::to_string(idx++) + "]", os);
    if (j.empty()) os << prefix << " = []\n";
    return;
  }
  std::string scalar = dump_deterministic(j, 0);
  scalar.pop_back();  // trailing newline
  os << prefix << " = " << scalar << '\n';
}

void emit(const Json& report, const Options& opts) {
  if (opts.format == "json") {
    std::cout << dump_deterministic(report);
  } else {
    print_table(report, "", std::cout);
  }
}

int run(const std::string& command, const Options& opts) {
  const auto started = std::chrono::steady_clock::now();
  Json report;
  report["command"] = command;
  report["config"] = config_echo(opts);
  Json warnings = Json::array({kCoverCaveat});

  int code = 0;
  try {
    Json results;
    if (command == "validate") results = run_validate(opts, warnings);
    else if (command == "complement") results = run_complement(opts, warnings);
    else if (command == "intertwiners") results = run_intertwiners(opts, warnings);
    else if (command == "curvature") results = run_curvature(opts, warnings);
    else if (command == "type11") results = run_type11(opts, warnings);
    else if (command == "holomorphic") results = run_holomorphic(opts, warnings);
    else if (command == "moduli") results = run_moduli(opts, warnings);
    else if (command == "halfplane") results = run_halfplane(opts, warnings);
    else results = run_hypotheses(opts, warnings);
    report["results"] = results;
  } catch (const CliError& e) {
    code = e.exit_code;
    Json payload;
    if (code == 3) {
      // Structured unsatisfiability payload (already JSON when thrown so).
      try {
        payload = Json::parse(e.what());
      } catch (const Json::exception&) {
        payload = Json{{"error", e.what()}};
      }
    } else {
      payload = Json{{"error", e.what()}};
    }
    report["results"] = payload;
  } catch (const Error& e) {
    code = 2;
    report["results"] = Json{{"error", e.what()}};
  }

  report["warnings"] = warnings;
  emit(report, opts);
  const auto elapsed = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - started)
                           .count();
  // Wall time goes to stderr only, keeping reports byte-reproducible.
  std::cerr << "wall_time_ms " << elapsed << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"invariant connection and holomorphic bundle calculator"};
  app.require_subcommand(1);

  Options opts;
  const std::vector<std::string> commands = {
      "validate",      "complement", "intertwiners",
      "curvature",     "type11",     "holomorphic",
      "moduli",        "halfplane",  "report-hypotheses"};
  const std::vector<std::string> descriptions = {
      "validate a Lie algebra and report its structure",
      "decide existence of an invariant complement",
      "compute the intertwiner space S",
      "curvature of the invariant connection given by mu",
      "type (1,1) defect F_J(mu)",
      "solve F_J = 0 inside S",
      "holomorphic locus with fingerprints and canonical forms",
      "half-plane moduli stratification for --k u1|su2",
      "check the classification hypotheses for (a, k)"};
  for (size_t c = 0; c < commands.size(); ++c) {
    CLI::App* sub = app.add_subcommand(commands[c], descriptions[c]);
    sub->add_option("--algebra", opts.algebra, "Lie algebra JSON file");
    sub->add_option("--isotropy", opts.isotropy, "isotropy subspace JSON file");
    sub->add_option("--split", opts.split, "reductive split JSON file");
    sub->add_option("--chi", opts.chi, "chi matrix JSON file");
    sub->add_option("--mu", opts.mu, "mu matrix JSON file");
    sub->add_option("--J", opts.j, "complex structure JSON file");
    sub->add_option("--k", opts.k, "target algebra (preset name or JSON file)");
    sub->add_option("--preset", opts.preset, "preset name");
    sub->add_option("--seed", opts.seed, "random seed");
    sub->add_option("--tol", opts.tol, "numeric tolerance");
    sub->add_option("--starts", opts.starts, "multistart count");
    sub->add_option("--max-iter", opts.max_iter, "solver iteration cap");
    sub->add_option("--format", opts.format, "json|table")
        ->check(CLI::IsMember({"json", "table"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }

  return run(app.get_subcommands().front()->get_name(), opts);
}
