#include "bihk/nahm/io.hpp"

#include <sstream>

#include "bihk/json_util.hpp"

namespace bihk::nahm {

namespace {

using json_util::from_matrix;
using json_util::to_matrix;

nlohmann::json series_to_json(const std::array<MatrixSeries, 4>& s) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& m : s) {
        nlohmann::json coeffs = nlohmann::json::array();
        for (int j = m.lo(); j <= m.hi(); ++j) coeffs.push_back(from_matrix(m.coeff(j)));
        out.push_back({{"lo", m.lo()}, {"hi", m.hi()}, {"coeffs", coeffs}});
    }
    return out;
}

std::array<MatrixSeries, 4> series_from_json(const nlohmann::json& j, int k) {
    if (!j.is_array() || j.size() != 4) throw InputError("tail series must list T0..T3");
    std::array<MatrixSeries, 4> out;
    for (std::size_t a = 0; a < 4; ++a) {
        const int lo = j[a].at("lo").get<int>(), hi = j[a].at("hi").get<int>();
        const auto& coeffs = j[a].at("coeffs");
        if (hi < lo || coeffs.size() != static_cast<std::size_t>(hi - lo + 1)) throw InputError("tail series has wrong length");
        out[a] = MatrixSeries(lo, hi, CMatrix::Zero(k, k));
        for (int p = lo; p <= hi; ++p) {
            CMatrix m = to_matrix(coeffs[static_cast<std::size_t>(p - lo)]);
            if (m.rows() != k || m.cols() != k) throw InputError("tail coefficient has wrong size");
            out[a].set(p, m);
        }
    }
    return out;
}

}  // namespace

nlohmann::json nahm_to_json(const NahmData& d) {
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& q : d.samples) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& m : q) row.push_back(from_matrix(m));
        samples.push_back(row);
    }
    return {{"charge", d.k},
            {"delta", d.delta},
            {"kappa", d.kappa},
            {"scale", d.scale},
            {"center", d.center},
            {"grid", d.grid},
            {"samples", samples},
            {"tails", {{"t0", series_to_json(d.tail0)}, {"t2", series_to_json(d.tail2)}}},
            {"certificate",
             {{"residual", d.declared_residual},
              {"anti_hermitian", anti_hermitian_defect(d)},
              {"pole_match", d.k > 1 ? pole_match_defect(d) : 0.0}}}};
}

NahmData nahm_from_json(const nlohmann::json& j) {
    try {
        NahmData d;
        d.k = j.at("charge").get<int>();
        if (d.k < 1) throw InputError("charge must be positive");
        d.delta = j.at("delta").get<double>();
        d.kappa = j.value("kappa", 0.0);
        d.scale = j.value("scale", 0.0);
        d.center = j.value("center", std::array<double, 4>{});
        d.grid = j.at("grid").get<std::vector<double>>();
        if (d.grid.size() < 9 || (d.grid.size() - 1) % 2) throw InputError("grid needs an even number (>= 8) of intervals");
        for (std::size_t i = 1; i < d.grid.size(); ++i)
            if (!(d.grid[i] > d.grid[i - 1])) throw InputError("grid must be strictly increasing");
        const auto& samples = j.at("samples");
        if (samples.size() != d.grid.size()) throw InputError("sample count does not match the grid");
        for (const auto& row : samples) {
            if (row.size() != 4) throw InputError("each sample needs T0..T3");
            Quad q;
            for (std::size_t a = 0; a < 4; ++a) {
                q[a] = to_matrix(row[a]);
                if (q[a].rows() != d.k || q[a].cols() != d.k) throw InputError("sample matrix has wrong size");
            }
            d.samples.push_back(q);
        }
        d.tail0 = series_from_json(j.at("tails").at("t0"), d.k);
        d.tail2 = series_from_json(j.at("tails").at("t2"), d.k);
        d.declared_residual = residual(d);
        return d;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed Nahm data: ") + e.what());
    }
}

nlohmann::json drift_to_json(const DriftReport& r) {
    nlohmann::json per = nlohmann::json::array();
    for (std::size_t i = 0; i < r.zetas.size(); ++i)
        per.push_back({{"zeta", json_util::from_complex(r.zetas[i])}, {"drift", r.drift[i]}});
    return {{"max_drift", r.max_drift}, {"samples", per}};
}

nlohmann::json contraction_to_json(const ContractionReport& r) {
    return {{"lhs", r.lhs}, {"minus_quarter_dF", r.rhs}, {"residual", r.residual}, {"max_residual", r.max_residual}};
}

NahmTangent named_tangent(const NahmData& d, const std::string& name) {
    static const std::array<std::string, 4> names{"phase", "x1", "x2", "x3"};
    for (std::size_t a = 0; a < 4; ++a)
        if (names[a] == name) {
            std::array<Complex, 4> c{};
            c[a] = 1.0;
            return constant_tangent(d, c);
        }
    throw InputError("unknown tangent '" + name + "' (expected phase, x1, x2 or x3)");
}

std::vector<std::pair<std::string, std::string>> parse_pairs(const std::string& spec) {
    std::vector<std::pair<std::string, std::string>> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == item.size())
            throw InputError("pair '" + item + "' must look like a:b");
        out.emplace_back(item.substr(0, colon), item.substr(colon + 1));
    }
    if (out.empty()) throw InputError("no tangent pairs given");
    return out;
}

}  // namespace bihk::nahm
