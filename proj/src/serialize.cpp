#include "symchar/serialize.hpp"

#include <fstream>

#include "symchar/identities.hpp"
#include "symchar/render.hpp"

namespace symchar {

using nlohmann::ordered_json;

ordered_json matrix_to_json(const ResidueMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ResidueMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) throw InvalidArgument("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  ResidueMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw InvalidArgument("matrix rows differ in length");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number_integer()) throw InvalidArgument("matrix entries must be integers");
      m(i, c) = v.get<std::int64_t>();
    }
  }
  return m;
}

ordered_json to_json(const ReductionCertificate& cert) {
  ordered_json j;
  j["n"] = cert.n.value();
  j["R"] = matrix_to_json(cert.r);
  j["B"] = matrix_to_json(cert.b);
  j["det_R"] = cert.det_r;
  j["zero_rows"] = cert.zero_rows;
  j["complete"] = cert.complete;
  return j;
}

ordered_json to_json(const ExponentMatrix& e) {
  ordered_json j;
  j["n"] = e.n.value();
  j["exponents"] = matrix_to_json(e.e);
  return j;
}

ordered_json to_json(const SuperTable& table, const UnitaryTable* unitary) {
  ordered_json j;
  j["n"] = table.n.value();
  j["d"] = table.d;
  ordered_json orbits = ordered_json::array();
  for (const auto& rep : table.orbits) orbits.push_back(to_json(rep));
  j["orbits"] = std::move(orbits);
  j["sizes"] = table.sizes;
  auto complex_rows = [](const Eigen::MatrixXcd& m) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      ordered_json row = ordered_json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({std::stod(format_number(m(i, c).real())), std::stod(format_number(m(i, c).imag()))});
      rows.push_back(std::move(row));
    }
    return rows;
  };
  j["S"] = complex_rows(table.s);
  if (unitary) {
    j["U"] = complex_rows(unitary->u);
    j["symmetry_residual"] = unitary->symmetry_residual;
    j["unitarity_residual"] = unitary->unitarity_residual;
  }
  return j;
}

ResidueMatrix read_matrix_file(const std::string& path, const char* member) {
  std::ifstream is(path);
  if (!is) throw IOFailure("cannot open " + path);
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
  if (j.is_object()) {
    if (!j.contains(member)) throw InvalidArgument(path + ": missing member \"" + member + "\"");
    return matrix_from_json(j[member]);
  }
  return matrix_from_json(j);
}

}  // namespace symchar
