#include "srbb/json_io.hpp"

#include <stdexcept>

namespace srbb {

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const nlohmann::json& in) {
  // Emitted targets and basis elements wrap the rows in an object.
  const nlohmann::json& j = in.is_object() && in.contains("matrix") ? in.at("matrix") : in;
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a non-empty array of rows");
  const auto d = static_cast<Eigen::Index>(j.size());
  Matrix m(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    const auto& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) throw std::invalid_argument("matrix must be square");
    for (Eigen::Index c = 0; c < d; ++c) {
      const auto& e = row[static_cast<size_t>(c)];
      if (e.is_number())
        m(r, c) = e.get<double>();
      else if (e.is_array() && e.size() == 2)
        m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
      else
        throw std::invalid_argument("matrix entries must be [re, im] pairs");
    }
  }
  return m;
}

nlohmann::json basis_element_to_json(std::int64_t d, int j, const Matrix& m) {
  return {{"d", d}, {"j", j}, {"matrix", matrix_to_json(m)}};
}

}  // namespace srbb
