// matrix_json.hpp: {"dims": [..], "re": [[..]], "im": [[..]]}, row-major.
// "im" may be omitted for real matrices.

#pragma once

#include <nlohmann/json.hpp>

#include <fstream>
#include <string>
#include <vector>

#include "swapcorr/linalg.hpp"

namespace swapcorr {

inline nlohmann::json matrix_to_json(const Matrix& m, const Dims& dims) {
  std::vector<std::vector<double>> re(static_cast<std::size_t>(m.rows())), im(re.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re[static_cast<std::size_t>(i)].push_back(m(i, j).real());
      im[static_cast<std::size_t>(i)].push_back(m(i, j).imag());
    }
  return {{"dims", dims}, {"re", re}, {"im", im}};
}

inline nlohmann::json to_json(const DensityMatrix& rho) { return matrix_to_json(rho.matrix(), rho.dims()); }

/// Parses and validates a density matrix. Throws InvalidInput on any
/// structural or physical defect.
inline DensityMatrix density_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object() || !j.contains("re"))
      throw InvalidInput("matrix JSON must be an object with a \"re\" field");
    const auto re = j.at("re").get<std::vector<std::vector<double>>>();
    std::vector<std::vector<double>> im;
    if (j.contains("im")) im = j.at("im").get<std::vector<std::vector<double>>>();

    const std::size_t n = re.size();
    if (n == 0) throw InvalidInput("matrix JSON: empty matrix");
    if (!im.empty() && im.size() != n) throw InvalidInput("matrix JSON: re/im row count mismatch");
    Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r) {
      if (re[r].size() != n || (!im.empty() && im[r].size() != n))
        throw InvalidInput("matrix JSON: matrix must be square");
      for (std::size_t c = 0; c < n; ++c)
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            cplx(re[r][c], im.empty() ? 0.0 : im[r][c]);
    }
    Dims dims = j.contains("dims") ? j.at("dims").get<Dims>() : Dims{n};
    return DensityMatrix(std::move(m), std::move(dims));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("matrix JSON: ") + e.what());
  }
}

inline DensityMatrix load_density(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open matrix file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("malformed JSON in '" + path + "': " + e.what());
  }
  return density_from_json(j);
}

}  // namespace swapcorr
