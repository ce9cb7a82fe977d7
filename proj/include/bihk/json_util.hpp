#pragma once

#include <vector>

#include "json.hpp"

#include "bihk/numeric.hpp"

namespace bihk::json_util {

// Complex numbers are [re, im]; plain numbers are accepted on input.
nlohmann::json from_complex(Complex z);
Complex to_complex(const nlohmann::json& j);
nlohmann::json from_complex_vector(const std::vector<Complex>& v);
std::vector<Complex> to_complex_vector(const nlohmann::json& j);
// {"rows": r, "cols": c, "data": [re, im, re, im, ...]} row-major
nlohmann::json from_matrix(const CMatrix& m);
CMatrix to_matrix(const nlohmann::json& j);

}  // namespace bihk::json_util
