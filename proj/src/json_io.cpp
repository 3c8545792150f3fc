#include "invmod/json_io.hpp"

#include <cstdio>
#include <sstream>

#include "invmod/errors.hpp"

namespace invmod {
namespace {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write(const Json& j, std::ostringstream& os, int indent, int depth) {
  const std::string pad(static_cast<size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<size_t>(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad_in << Json(it.key()).dump() << ": ";
        write(it.value(), os, indent, depth + 1);
      }
      os << '\n' << pad << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      bool first = true;
      for (const auto& item : j) {
        if (!first) os << ",\n";
        first = false;
        os << pad_in;
        write(item, os, indent, depth + 1);
      }
      os << '\n' << pad << ']';
      return;
    }
    case Json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump();
      return;
  }
}

}  // namespace

std::string dump_deterministic(const Json& j, int indent) {
  std::ostringstream os;
  write(j, os, indent, 0);
  os << '\n';
  return os.str();
}

Json lie_algebra_to_json(const LieAlgebra& l) {
  Json out;
  out["name"] = l.name();
  out["dim"] = static_cast<int>(l.dim());
  out["basis"] = l.basis_labels();
  Json brackets = Json::array();
  for (Eigen::Index i = 0; i < l.dim(); ++i)
    for (Eigen::Index j = i + 1; j < l.dim(); ++j) {
      RationalVector c = l.basis_adjoint(i).col(j);
      if (c.isZero(Rational(0))) continue;
      Json entry;
      entry["i"] = static_cast<int>(i);
      entry["j"] = static_cast<int>(j);
      Json coeffs = Json::array();
      for (Eigen::Index m = 0; m < l.dim(); ++m)
        coeffs.push_back(format_rational(c(m)));
      entry["coeffs"] = coeffs;
      brackets.push_back(entry);
    }
  out["brackets"] = brackets;
  return out;
}

LieAlgebra lie_algebra_from_json(const Json& j) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (key != "name" && key != "dim" && key != "basis" && key != "brackets")
      throw Error("unknown key \"" + key + "\" in Lie algebra JSON");
  }
  const int n = j.at("dim").get<int>();
  if (n <= 0) throw Error("dim must be positive");
  std::vector<std::vector<RationalVector>> table(
      n, std::vector<RationalVector>(n, RationalVector::Zero(n)));
  if (j.contains("brackets"))
    for (const Json& entry : j.at("brackets")) {
      int a = entry.at("i").get<int>(), b = entry.at("j").get<int>();
      if (a < 0 || b < 0 || a >= n || b >= n || a >= b)
        throw Error("bracket entry requires 0 <= i < j < dim");
      const Json& coeffs = entry.at("coeffs");
      if (static_cast<int>(coeffs.size()) != n)
        throw Error("coeffs must have length dim");
      RationalVector v(n);
      for (int m = 0; m < n; ++m)
        v(m) = parse_rational(coeffs[m].get<std::string>());
      table[a][b] = v;
      table[b][a] = -v;
    }
  std::vector<std::string> labels;
  if (j.contains("basis")) labels = j.at("basis").get<std::vector<std::string>>();
  return LieAlgebra::validate(j.value("name", "algebra"), table, labels);
}

Json rational_matrix_to_json(const RationalMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(format_rational(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

RationalMatrix rational_matrix_from_json(const Json& j) {
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) return RationalMatrix(0, 0);
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  RationalMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != cols)
      throw Error("ragged matrix in JSON");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& cell = j[i][c];
      out(i, c) = cell.is_string() ? parse_rational(cell.get<std::string>())
                                   : Rational(cell.get<long long>());
    }
  }
  return out;
}

Json subspace_to_json(const Subspace& s) {
  // One row per basis vector.
  return Json{{"basis", rational_matrix_to_json(RationalMatrix(s.basis.transpose()))}};
}

Subspace subspace_from_json(const Json& j, Eigen::Index ambient_dim) {
  RationalMatrix rows = rational_matrix_from_json(j.at("basis"));
  return Subspace::from_basis(RationalMatrix(rows.transpose()), ambient_dim);
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) return Matrix(0, 0);
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  Matrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != cols)
      throw Error("ragged matrix in JSON");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& cell = j[i][c];
      out(i, c) = cell.is_string()
                      ? parse_rational(cell.get<std::string>()).convert_to<double>()
                      : cell.get<double>();
    }
  }
  return out;
}

Json split_to_json(const ReductiveSplit& split) {
  Json out;
  out["isotropy"] = subspace_to_json(split.isotropy);
  out["complement"] = subspace_to_json(split.complement);
  out["proj_h"] = rational_matrix_to_json(split.proj_h);
  out["proj_s"] = rational_matrix_to_json(split.proj_s);
  return out;
}

Json structure_report_to_json(const StructureReport& report) {
  Json out;
  out["is_semisimple"] = report.is_semisimple;
  Json ideals = Json::array();
  for (size_t i = 0; i < report.simple_ideals.size(); ++i) {
    Json ideal = subspace_to_json(report.simple_ideals[i]);
    switch (report.compactness_flags[i]) {
      case Compactness::compact: ideal["compactness"] = "compact"; break;
      case Compactness::noncompact: ideal["compactness"] = "noncompact"; break;
      case Compactness::undetermined: ideal["compactness"] = "undetermined"; break;
    }
    ideals.push_back(ideal);
  }
  out["simple_ideals"] = ideals;
  if (!report.note.empty()) out["note"] = report.note;
  return out;
}

Json hypothesis_report_to_json(const HypothesisReport& report) {
  Json out;
  out["base_algebra"] = structure_report_to_json(report.base);
  out["k_compact"] = report.k_compact;
  out["finalcoro_applies"] = report.applies;
  out["reason"] = report.reason;
  return out;
}

}  // namespace invmod
