#include "bihk/bipoisson/io.hpp"

#include "bihk/error.hpp"

namespace bihk::bipoisson {

nlohmann::json chart_to_json(const Chart& c) {
    return {{"coords", c.coords()}};
}

Chart chart_from_json(const nlohmann::json& j) {
    if (!j.contains("coords")) {
        if (j.contains("n")) return Chart::darboux(j.at("n").get<std::size_t>());
        throw InputError("chart JSON needs 'coords' or 'n'");
    }
    return Chart(j.at("coords").get<std::vector<std::string>>());
}

nlohmann::json bivector_to_json(const PolyBivector& b) {
    nlohmann::json entries = nlohmann::json::array();
    for (std::size_t r = 0; r < b.dim(); ++r)
        for (std::size_t c = r + 1; c < b.dim(); ++c)
            if (!b(r, c).is_zero()) entries.push_back({{"row", r}, {"col", c}, {"poly", b(r, c).to_string()}});
    return {{"chart", chart_to_json(b.chart())}, {"entries", entries}};
}

PolyBivector bivector_from_json(const nlohmann::json& j) {
    Chart chart = chart_from_json(j.at("chart"));
    PolyMatrix m(chart.dim(), chart.dim());
    for (const auto& e : j.at("entries")) {
        std::size_t r = 0, c = 0;
        if (e.at("row").is_string()) {
            r = chart.index_of(e.at("row").get<std::string>());
            c = chart.index_of(e.at("col").get<std::string>());
        } else {
            r = e.at("row").get<std::size_t>();
            c = e.at("col").get<std::size_t>();
        }
        if (r >= chart.dim() || c >= chart.dim() || r == c) throw InputError("bad bivector entry index");
        MultiPoly f = MultiPoly::parse(e.at("poly").get<std::string>());
        m(r, c) += f;
        m(c, r) -= f;
    }
    return PolyBivector(chart, std::move(m));
}

nlohmann::json verdict_to_json(const PoissonVerdict& v) {
    return {{"poisson_first", v.poisson_first},
            {"poisson_second", v.poisson_second},
            {"compatible", v.compatible},
            {"bi_poisson", v.all()}};
}

}  // namespace bihk::bipoisson
