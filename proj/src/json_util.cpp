#include "bihk/json_util.hpp"

#include "bihk/error.hpp"

namespace bihk::json_util {

nlohmann::json from_complex(Complex z) {
    return nlohmann::json::array({z.real(), z.imag()});
}

Complex to_complex(const nlohmann::json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
    if (j.is_object()) return {j.value("re", 0.0), j.value("im", 0.0)};
    throw InputError("expected a complex number, got " + j.dump());
}

nlohmann::json from_complex_vector(const std::vector<Complex>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& z : v) a.push_back(from_complex(z));
    return a;
}

std::vector<Complex> to_complex_vector(const nlohmann::json& j) {
    if (!j.is_array()) throw InputError("expected an array of complex numbers");
    std::vector<Complex> v;
    for (const auto& e : j) v.push_back(to_complex(e));
    return v;
}

nlohmann::json from_matrix(const CMatrix& m) {
    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(2 * m.size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            data.push_back(m(r, c).real());
            data.push_back(m(r, c).imag());
        }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

CMatrix to_matrix(const nlohmann::json& j) {
    auto rows = j.at("rows").get<Eigen::Index>(), cols = j.at("cols").get<Eigen::Index>();
    auto data = j.at("data").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(data.size()) != 2 * rows * cols) throw InputError("matrix data has wrong length");
    CMatrix m(rows, cols);
    std::size_t k = 0;
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c, k += 2) m(r, c) = {data[k], data[k + 1]};
    return m;
}

}  // namespace bihk::json_util
