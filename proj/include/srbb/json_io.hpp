#pragma once

#include <string>

#include <json.hpp>

#include "srbb/types.hpp"

namespace srbb {

/// Matrix as an array of rows of [re, im] pairs.
nlohmann::json matrix_to_json(const Matrix& m);

/// Inverse of matrix_to_json; also accepts an object with a "matrix" key. Throws on ragged or non-square input.
Matrix matrix_from_json(const nlohmann::json& j);

/// Basis element record {"d", "j", "matrix"}.
nlohmann::json basis_element_to_json(std::int64_t d, int j, const Matrix& m);

}  // namespace srbb
