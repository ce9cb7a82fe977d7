#include "bihk/hilbchart/hilbchart.hpp"

#include <algorithm>
#include <cmath>

#include "bihk/error.hpp"
#include "bihk/json_util.hpp"

namespace bihk::hilbchart {

namespace {

void check_separated(const std::vector<Complex>& z) {
    double scale = 1.0;
    for (const auto& x : z) scale = std::max(scale, std::abs(x));
    for (std::size_t a = 0; a < z.size(); ++a)
        for (std::size_t b = a + 1; b < z.size(); ++b)
            if (std::abs(z[a] - z[b]) <= kCollisionTol * scale) throw MathError("chart boundary: roots collide");
}

// prod_{j != i} (z - z_j), descending coefficients
std::vector<Complex> omit_root(const std::vector<Complex>& roots, std::size_t i) {
    std::vector<Complex> others;
    for (std::size_t j = 0; j < roots.size(); ++j)
        if (j != i) others.push_back(roots[j]);
    return poly_from_roots(others);
}

}  // namespace

TransversePoint TransversePoint::make(std::vector<Complex> q, std::vector<Complex> p) {
    if (q.size() < 2) throw InputError("q must have degree at least 1");
    if (std::abs(q[0] - Complex(1.0)) > 1e-14) throw InputError("q must be monic");
    if (p.size() > q.size() - 1) {
        std::size_t extra = p.size() - (q.size() - 1);
        for (std::size_t k = 0; k < extra; ++k)
            if (p[k] != Complex(0.0)) throw InputError("deg p must be below deg q");
        p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(extra));
    }
    p.insert(p.begin(), q.size() - 1 - p.size(), Complex(0.0));
    return {std::move(q), std::move(p)};
}

std::vector<Complex> TransversePoint::coords() const {
    std::vector<Complex> c(q.begin() + 1, q.end());
    c.insert(c.end(), p.begin(), p.end());
    return c;
}

TransversePoint TransversePoint::from_coords(std::span<const Complex> c) {
    if (c.empty() || c.size() % 2) throw InputError("coefficient chart point must have even length");
    std::size_t n = c.size() / 2;
    std::vector<Complex> q{1.0};
    q.insert(q.end(), c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n));
    return {q, std::vector<Complex>(c.begin() + static_cast<std::ptrdiff_t>(n), c.end())};
}

std::vector<Complex> RootChartPoint::coords() const {
    std::vector<Complex> c;
    for (std::size_t k = 0; k < roots.size(); ++k) {
        c.push_back(roots[k]);
        c.push_back(values[k]);
    }
    return c;
}

TransversePoint roots_to_coeffs(const RootChartPoint& r) {
    const std::size_t n = r.n();
    if (n == 0 || r.values.size() != n) throw InputError("roots and values must have the same positive length");
    check_separated(r.roots);
    std::vector<Complex> p(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        auto li = omit_root(r.roots, i);
        Complex denom = horner(li, r.roots[i]);
        for (std::size_t k = 0; k < n; ++k) p[k] += r.values[i] * li[k] / denom;
    }
    return {poly_from_roots(r.roots), p};
}

RootChartPoint coeffs_to_roots(const TransversePoint& t) {
    auto roots = poly_roots(t.q);
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    check_separated(roots);
    RootChartPoint r{roots, {}};
    for (const auto& z : roots) r.values.push_back(horner(t.p, z));
    return r;
}

std::pair<PolyBivector, PolyBivector> chart_bivectors(std::size_t n, SurfaceModel model) {
    if (n == 0) throw InputError("n must be positive");
    auto chart = bipoisson::Chart::darboux(n);
    std::vector<std::tuple<std::string, std::string, symcore::MultiPoly>> e1, e2;
    for (std::size_t k = 1; k <= n; ++k) {
        std::string z = "z" + std::to_string(k), u = "u" + std::to_string(k);
        symcore::MultiPoly base = model == SurfaceModel::plane ? symcore::MultiPoly(1) : symcore::MultiPoly::variable(u);
        e1.emplace_back(z, u, base);
        e2.emplace_back(z, u, base * symcore::MultiPoly::variable(z));
    }
    return {PolyBivector::from_entries(chart, e1), PolyBivector::from_entries(chart, e2)};
}

CMatrix coefficient_jacobian(const RootChartPoint& r) {
    const std::size_t n = r.n();
    check_separated(r.roots);
    const auto N = static_cast<Eigen::Index>(n);
    CMatrix j = CMatrix::Zero(2 * N, 2 * N);
    auto t = roots_to_coeffs(r);
    auto dp = poly_derivative(t.p);
    for (std::size_t i = 0; i < n; ++i) {
        auto li_un = omit_root(r.roots, i);  // q / (z - z_i)
        Complex denom = horner(li_un, r.roots[i]);
        Complex dpi = dp.empty() ? Complex(0.0) : horner(dp, r.roots[i]);
        const auto zc = static_cast<Eigen::Index>(2 * i), uc = zc + 1;
        for (std::size_t k = 0; k < n; ++k) {
            const auto row = static_cast<Eigen::Index>(k);
            j(row, zc) = -li_un[k];                            // d q_{k+1} / d z_i
            j(N + row, uc) = li_un[k] / denom;                 // d p / d u_i = L_i
            j(N + row, zc) = -dpi * li_un[k] / denom;          // d p / d z_i = -p'(z_i) L_i
        }
    }
    return j;
}

BivectorPair root_bivectors(const RootChartPoint& r, SurfaceModel model) {
    const auto N = static_cast<Eigen::Index>(r.n());
    CMatrix a = CMatrix::Zero(2 * N, 2 * N), b = a;
    for (Eigen::Index k = 0; k < N; ++k) {
        Complex base = model == SurfaceModel::plane ? Complex(1.0) : r.values[static_cast<std::size_t>(k)];
        a(2 * k, 2 * k + 1) = base;
        a(2 * k + 1, 2 * k) = -base;
        b(2 * k, 2 * k + 1) = base * r.roots[static_cast<std::size_t>(k)];
        b(2 * k + 1, 2 * k) = -base * r.roots[static_cast<std::size_t>(k)];
    }
    return {a, b};
}

BivectorPair pushforward_bivectors_qp(const TransversePoint& t, SurfaceModel model) {
    auto r = coeffs_to_roots(t);
    CMatrix j = coefficient_jacobian(r);
    auto root = root_bivectors(r, model);
    return {j * root.first * j.transpose(), j * root.second * j.transpose()};
}

bipoisson::BivectorField coefficient_bivector_field(int which, SurfaceModel model) {
    if (which != 1 && which != 2) throw InputError("bivector index must be 1 or 2");
    return [which, model](const CVector& x) {
        std::vector<Complex> c(x.data(), x.data() + x.size());
        auto pair = pushforward_bivectors_qp(TransversePoint::from_coords(c), model);
        return which == 1 ? pair.first : pair.second;
    };
}

std::vector<Complex> canonical_map(const TransversePoint& t) {
    return {t.q.begin() + 1, t.q.end()};
}

TransversePoint random_transverse_point(Rng& rng, std::size_t n, double radius, double min_separation) {
    RootChartPoint r;
    while (r.roots.size() < n) {
        Complex z = uniform_complex(rng, radius);
        if (std::all_of(r.roots.begin(), r.roots.end(), [&](Complex w) { return std::abs(w - z) >= min_separation; }))
            r.roots.push_back(z);
    }
    for (std::size_t k = 0; k < n; ++k) r.values.push_back(uniform_complex(rng, radius));
    return roots_to_coeffs(r);
}

nlohmann::json to_json(const TransversePoint& t) {
    return {{"q", json_util::from_complex_vector(t.q)}, {"p", json_util::from_complex_vector(t.p)}};
}

nlohmann::json to_json(const RootChartPoint& r) {
    return {{"roots", json_util::from_complex_vector(r.roots)}, {"values", json_util::from_complex_vector(r.values)}};
}

TransversePoint transverse_from_json(const nlohmann::json& j) {
    return TransversePoint::make(json_util::to_complex_vector(j.at("q")), json_util::to_complex_vector(j.at("p")));
}

RootChartPoint roots_from_json(const nlohmann::json& j) {
    return {json_util::to_complex_vector(j.at("roots")), json_util::to_complex_vector(j.at("values"))};
}

}  // namespace bihk::hilbchart
