#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bihk/bipoisson/recursion.hpp"
#include "bihk/error.hpp"
#include "bihk/hilbchart/hilbchart.hpp"

using namespace bihk;
using namespace bihk::hilbchart;
using symcore::MultiPoly;

namespace {

bool close(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (std::abs(a[k] - b[k]) > tol) return false;
    return true;
}

}  // namespace

TEST_CASE("roots_to_coeffs") {
    auto t = roots_to_coeffs({{1.0, 2.0}, {3.0, 4.0}});
    CHECK(close(t.q, {1.0, -3.0, 2.0}, 1e-14));
    CHECK(close(t.p, {1.0, 2.0}, 1e-14));
    auto s = roots_to_coeffs({{0.0}, {Complex(2.0, -1.0)}});
    CHECK(close(s.q, {1.0, 0.0}, 0));
    CHECK(close(s.p, {Complex(2.0, -1.0)}, 0));
    CHECK_THROWS_WITH_AS(roots_to_coeffs({{1.0, 1.0}, {0.0, 0.0}}), "chart boundary: roots collide", MathError);

    Rng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        auto x = random_transverse_point(rng, 1 + trial % 4);
        auto back = roots_to_coeffs(coeffs_to_roots(x));
        CHECK(close(back.q, x.q, 1e-10));
        CHECK(close(back.p, x.p, 1e-10));
    }
}

TEST_CASE("coeffs_to_roots") {
    auto r = coeffs_to_roots(TransversePoint::make({1.0, 0.0, -1.0}, {7.0}));
    CHECK(close(r.roots, {-1.0, 1.0}, 1e-14));
    CHECK(close(r.values, {7.0, 7.0}, 1e-14));
    auto r2 = coeffs_to_roots(TransversePoint::make({1.0, -3.0, 2.0}, {1.0, 2.0}));
    CHECK(close(r2.roots, {1.0, 2.0}, 1e-13));
    CHECK(close(r2.values, {3.0, 4.0}, 1e-13));
    CHECK_THROWS_AS(coeffs_to_roots(TransversePoint::make({1.0, -2.0, 1.0}, {0.0, 1.0})), MathError);
    CHECK_THROWS_AS(TransversePoint::make({2.0, 1.0}, {1.0}), InputError);
    CHECK_THROWS_AS(TransversePoint::make({1.0, 1.0}, {1.0, 1.0}), InputError);
}

TEST_CASE("chart bivectors") {
    auto [a, b] = chart_bivectors(1);
    CHECK(a(0, 1) == MultiPoly(1));
    CHECK(b(0, 1) == MultiPoly::parse("z1"));
    auto [p, q] = chart_bivectors(2);
    CHECK(p(2, 3) == MultiPoly(1));
    CHECK(q(2, 3) == MultiPoly::parse("z2"));
    CHECK(p(0, 2).is_zero());
    CHECK(q(1, 0) == MultiPoly::parse("-z1"));
    for (std::size_t n = 1; n <= 3; ++n) {
        auto [x, y] = chart_bivectors(n);
        CHECK(bipoisson::is_poisson_pair(x, y).all());
        auto [cx, cy] = chart_bivectors(n, SurfaceModel::cstar);
        CHECK(bipoisson::is_poisson_pair(cx, cy).all());
    }
}

TEST_CASE("jacobian matches finite differences of roots_to_coeffs") {
    Rng rng(3);
    for (std::size_t n = 1; n <= 4; ++n) {
        auto t = random_transverse_point(rng, n);
        auto r = coeffs_to_roots(t);
        CMatrix j = coefficient_jacobian(r);
        const double h = 1e-6;
        for (std::size_t col = 0; col < 2 * n; ++col) {
            RootChartPoint rp = r, rm = r;
            auto& tp = col % 2 ? rp.values[col / 2] : rp.roots[col / 2];
            auto& tm = col % 2 ? rm.values[col / 2] : rm.roots[col / 2];
            tp += h;
            tm -= h;
            auto cp = roots_to_coeffs(rp).coords(), cm = roots_to_coeffs(rm).coords();
            for (std::size_t row = 0; row < 2 * n; ++row)
                CHECK(std::abs((cp[row] - cm[row]) / (2 * h) - j(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col))) <
                      1e-6);
        }
    }
}

TEST_CASE("pushforward: n = 1 coefficient chart is the root chart up to q1 = -z") {
    auto t = TransversePoint::make({1.0, -0.5}, {2.0});
    auto pf = pushforward_bivectors_qp(t);
    CHECK(std::abs(pf.first(0, 1) + 1.0) < 1e-15);
    CHECK(std::abs(pf.second(0, 1) + 0.5) < 1e-15);
}

TEST_CASE("pushforward: antisymmetry, Jacobi identity, pfaffian polynomial") {
    Rng rng(5);
    for (std::size_t n = 1; n <= 4; ++n)
        for (int trial = 0; trial < 5; ++trial) {
            auto t = random_transverse_point(rng, n);
            for (auto model : {SurfaceModel::plane, SurfaceModel::cstar}) {
                auto pf = pushforward_bivectors_qp(t, model);
                CHECK(max_abs(pf.first + pf.first.transpose()) < 1e-12);
                CHECK(max_abs(pf.second + pf.second.transpose()) < 1e-12);
                auto mu = bipoisson::pfaffian_polynomial_at(pf.first, pf.second);
                CHECK(close(mu, t.q, 1e-8));
                CHECK(close(std::vector<Complex>(mu.begin() + 1, mu.end()), canonical_map(t), 1e-8));
            }
        }
    auto t = random_transverse_point(rng, 2);
    auto c = t.coords();
    CVector x = Eigen::Map<CVector>(c.data(), static_cast<Eigen::Index>(c.size()));
    CHECK(bipoisson::schouten_fd_max(coefficient_bivector_field(1), x, 1e-4) <= 1e-6);
    CHECK(bipoisson::schouten_fd_max(coefficient_bivector_field(2), x, 1e-4) <= 1e-6);
    auto sum = [](const CVector& y) {
        return CMatrix(coefficient_bivector_field(1)(y) + 0.7 * coefficient_bivector_field(2)(y));
    };
    CHECK(bipoisson::schouten_fd_max(sum, x, 1e-4) <= 1e-6);
}

TEST_CASE("recursion operator: rank, minimal polynomial, chart equivariance") {
    Rng rng(8);
    for (std::size_t n = 1; n <= 4; ++n) {
        auto t = random_transverse_point(rng, n);
        auto r = coeffs_to_roots(t);
        auto pf = pushforward_bivectors_qp(t);
        CMatrix rq = bipoisson::recursion_matrix(pf.first, pf.second);
        CHECK(bipoisson::minimal_polynomial_check(rq, t.q));
        for (const auto& z : r.roots) CHECK(bipoisson::degeneracy_rank(pf.first, pf.second, z) == 2 * n - 2);
        auto root = root_bivectors(r);
        CMatrix rr = bipoisson::recursion_matrix(root.first, root.second);
        CMatrix j = coefficient_jacobian(r);
        CHECK(max_abs(rq - j * rr * j.inverse()) < 1e-8);
    }
}

TEST_CASE("nijenhuis tensor on the coefficient chart converges at second order") {
    Rng rng(21);
    auto t = random_transverse_point(rng, 2, 1.5, 0.6);
    auto c = t.coords();
    CVector x = Eigen::Map<CVector>(c.data(), static_cast<Eigen::Index>(c.size()));
    auto base = [](const CVector& y) {
        return bipoisson::recursion_matrix(coefficient_bivector_field(1)(y), coefficient_bivector_field(2)(y));
    };
    // R is low-degree in the coefficient chart, so central differences are exact there;
    // pulling back by y_k -> y_k + 0.3 y_{k+1}^3 gives a Nijenhuis field with O(h^2) error.
    auto pulled = [&](const CVector& y) {
        const Eigen::Index n = y.size();
        CVector phi = y;
        CMatrix d = CMatrix::Identity(n, n);
        for (Eigen::Index k = 0; k < n; ++k) {
            Eigen::Index k1 = (k + 1) % n;
            phi(k) += 0.3 * std::pow(y(k1), 3);
            d(k, k1) += 0.9 * y(k1) * y(k1);
        }
        return CMatrix(d.inverse() * base(phi) * d);
    };
    CHECK(bipoisson::nijenhuis_tensor(base, x, 1e-3).max_abs() <= 1e-9);
    double n1 = bipoisson::nijenhuis_tensor(pulled, x, 1e-2).max_abs();
    double n2 = bipoisson::nijenhuis_tensor(pulled, x, 5e-3).max_abs();
    CHECK(n1 / n2 >= 3.0);
    CHECK(bipoisson::nijenhuis_tensor(pulled, x, 1e-4).max_abs() <= 1e-5);
}

TEST_CASE("canonical map") {
    CHECK(close(canonical_map(TransversePoint::make({1.0, -3.0, 2.0}, {0.0, 1.0})), {-3.0, 2.0}, 0));
    CHECK(close(canonical_map(TransversePoint::make({1.0, 0.0, 0.0, 0.0}, {1.0})), {0.0, 0.0, 0.0}, 0));
}

TEST_CASE("json") {
    auto t = TransversePoint::make({1.0, -3.0, 2.0}, {1.0, 2.0});
    auto back = transverse_from_json(to_json(t));
    CHECK(close(back.q, t.q, 0));
    CHECK(close(back.p, t.p, 0));
    auto r = roots_from_json(nlohmann::json::parse(R"({"roots": [1, [2, 0.5]], "values": [3, 4]})"));
    CHECK(r.roots[1] == Complex(2.0, 0.5));
}
