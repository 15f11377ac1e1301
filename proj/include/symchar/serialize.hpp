#pragma once

#include <json.hpp>

#include "symchar/asymptotic.hpp"
#include "symchar/table.hpp"

namespace symchar {

/// Row-major nested arrays.
nlohmann::ordered_json matrix_to_json(const ResidueMatrix& m);
ResidueMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const ReductionCertificate& cert);
nlohmann::ordered_json to_json(const ExponentMatrix& e);

/// Orbit list, sizes, and S as [re, im] pairs; the unitary block is added when given.
nlohmann::ordered_json to_json(const SuperTable& table, const UnitaryTable* unitary = nullptr);

/// Reads a matrix from a file holding either a bare nested array or an
/// object with a "B" or "R" member.
ResidueMatrix read_matrix_file(const std::string& path, const char* member);

}  // namespace symchar
