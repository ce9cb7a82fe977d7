#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>

#include "bihk/bipoisson/io.hpp"
#include "bihk/error.hpp"

using namespace bihk;
using namespace bihk::bipoisson;
using symcore::Exponent;

namespace {

MultiPoly P(const std::string& s) { return MultiPoly::parse(s); }

// Pi_1 = sum d/dz_i ^ d/du_i, Pi_2 = sum z_i d/dz_i ^ d/du_i
std::pair<PolyBivector, PolyBivector> remark_pair(std::size_t n) {
    Chart c = Chart::darboux(n);
    std::vector<std::tuple<std::string, std::string, MultiPoly>> e1, e2;
    for (std::size_t k = 1; k <= n; ++k) {
        std::string z = "z" + std::to_string(k), u = "u" + std::to_string(k);
        e1.emplace_back(z, u, MultiPoly(1));
        e2.emplace_back(z, u, MultiPoly::variable(z));
    }
    return {PolyBivector::from_entries(c, e1), PolyBivector::from_entries(c, e2)};
}

// ---- term-by-term oracle: monomials as (integer coefficient, exponent vector in chart order) ----
using Mono = std::map<std::vector<int>, long>;

Mono to_mono(const MultiPoly& f, const Chart& chart) {
    Mono m;
    for (const auto& [e, c] : f.terms()) {
        std::vector<int> ex(chart.dim(), 0);
        for (std::size_t k = 0; k < f.vars().size(); ++k) ex[chart.index_of(f.vars()[k])] = static_cast<int>(e[k]);
        m[ex] += c.re().get_num().get_si();
    }
    return m;
}

Mono mono_diff(const Mono& f, std::size_t l) {
    Mono out;
    for (const auto& [e, c] : f)
        if (e[l] > 0) {
            auto ne = e;
            ne[l] -= 1;
            out[ne] += c * e[l];
        }
    return out;
}

void mono_add_product(Mono& acc, const Mono& a, const Mono& b) {
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            std::vector<int> e(ea.size());
            for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
            acc[e] += ca * cb;
        }
}

Mono oracle_component(const PolyBivector& p, const PolyBivector& q, std::size_t i, std::size_t j, std::size_t k) {
    Mono acc;
    const std::size_t idx[3][3] = {{i, j, k}, {j, k, i}, {k, i, j}};
    for (const auto& c : idx)
        for (std::size_t l = 0; l < p.dim(); ++l) {
            mono_add_product(acc, to_mono(p(l, c[0]), p.chart()), mono_diff(to_mono(q(c[1], c[2]), q.chart()), l));
            mono_add_product(acc, to_mono(q(l, c[0]), q.chart()), mono_diff(to_mono(p(c[1], c[2]), p.chart()), l));
        }
    for (auto it = acc.begin(); it != acc.end();) it = it->second == 0 ? acc.erase(it) : std::next(it);
    return acc;
}

PolyBivector random_integer_bivector(std::mt19937_64& rng, const Chart& chart, int entries) {
    std::uniform_int_distribution<int> coef(-3, 3), deg(0, 2);
    std::uniform_int_distribution<std::size_t> idx(0, chart.dim() - 1);
    std::vector<std::tuple<std::string, std::string, MultiPoly>> e;
    for (int t = 0; t < entries; ++t) {
        std::size_t a = idx(rng), b = idx(rng);
        if (a == b) continue;
        Exponent ex(chart.dim());
        for (auto& x : ex) x = static_cast<std::uint32_t>(deg(rng) == 2 ? 1 : 0);
        e.emplace_back(chart.coord(a), chart.coord(b), MultiPoly::monomial(chart.coords(), ex, coef(rng)));
    }
    return PolyBivector::from_entries(chart, e);
}

}  // namespace

TEST_CASE("chart validation") {
    CHECK_THROWS_AS(Chart({"a", "b", "c"}), InputError);
    CHECK_THROWS_AS(Chart({"a", "a"}), InputError);
    CHECK(Chart::darboux(2).coords() == std::vector<std::string>{"z1", "u1", "z2", "u2"});
    CHECK_THROWS_AS(PolyBivector(Chart::darboux(1), symcore::PolyMatrix::from_strings({{"0", "w"}, {"-w", "0"}})),
                    InputError);
    CHECK_THROWS_AS(PolyBivector(Chart::darboux(1), symcore::PolyMatrix::from_strings({{"0", "1"}, {"1", "0"}})),
                    InputError);
}

TEST_CASE("schouten bracket: constant and remark pairs") {
    for (std::size_t n = 1; n <= 3; ++n) {
        auto [p1, p2] = remark_pair(n);
        CHECK(schouten_bracket(p1, p1).is_zero());
        CHECK(schouten_bracket(p1, p2).is_zero());
        CHECK(schouten_bracket(p2, p2).is_zero());
    }
}

TEST_CASE("schouten bracket: term-by-term oracle") {
    Chart c = Chart::darboux(2);
    auto a = PolyBivector::from_entries(c, {{"z1", "u2", P("z1")}});
    auto b = PolyBivector::from_entries(c, {{"z2", "u1", P("u1")}});
    // frozen: the coordinate formula gives the zero trivector on this pair
    CHECK(schouten_bracket(a, b).is_zero());
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k) CHECK(oracle_component(a, b, i, j, k).empty());

    std::mt19937_64 rng(17);
    Chart c3 = Chart::darboux(3);
    for (int trial = 0; trial < 6; ++trial) {
        auto x = random_integer_bivector(rng, c3, 6), y = random_integer_bivector(rng, c3, 6);
        Trivector t = schouten_bracket(x, y);
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = i + 1; j < 6; ++j)
                for (std::size_t k = j + 1; k < 6; ++k) CHECK(to_mono(t(i, j, k), c3) == oracle_component(x, y, i, j, k));
    }
}

TEST_CASE("schouten bracket: antisymmetry and symmetry in the arguments") {
    std::mt19937_64 rng(2);
    Chart c = Chart::darboux(2);
    for (int trial = 0; trial < 4; ++trial) {
        auto x = random_integer_bivector(rng, c, 5), y = random_integer_bivector(rng, c, 5);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                for (std::size_t k = 0; k < 4; ++k) {
                    MultiPoly v = schouten_component(x, y, i, j, k);
                    CHECK(v == -schouten_component(x, y, j, i, k));
                    CHECK(v == -schouten_component(x, y, i, k, j));
                    CHECK(v == schouten_component(y, x, i, j, k));
                }
    }
    CHECK_THROWS_AS(schouten_bracket(PolyBivector::zero(Chart::darboux(1)), PolyBivector::zero(Chart::darboux(2))),
                    InputError);
}

TEST_CASE("is_poisson_pair verdicts") {
    auto [p1, p2] = remark_pair(3);
    CHECK(is_poisson_pair(p1, p2).all());
    Chart c = Chart::darboux(2);
    auto q = PolyBivector::from_entries(c, {{"z1", "z2", P("u1^2")}, {"u1", "u2", P("1")}});
    auto v = is_poisson_pair(remark_pair(2).first, q);
    // frozen from the oracle: [Q,Q] has the single component 4*u1 at (z1,z2,u2)
    CHECK(v.poisson_first);
    CHECK_FALSE(v.poisson_second);
    CHECK(v.compatible);
    CHECK_FALSE(v.all());
    auto qq = schouten_bracket(q, q).nonzero();
    REQUIRE(qq.size() == 1);
    CHECK(std::get<0>(qq[0]) == 0);
    CHECK(std::get<1>(qq[0]) == 2);
    CHECK(std::get<2>(qq[0]) == 3);
    CHECK(std::get<3>(qq[0]) == P("4*u1"));
    CHECK(is_poisson_pair(PolyBivector::zero(c), PolyBivector::zero(c)).all());
}

TEST_CASE("eigenvalues of R commute in both brackets") {
    auto [p1, p2] = remark_pair(3);
    for (std::size_t a = 1; a <= 3; ++a)
        for (std::size_t b = 1; b <= 3; ++b) {
            MultiPoly za = P("z" + std::to_string(a)), zb = P("z" + std::to_string(b));
            CHECK(poisson_bracket(p1, za, zb).is_zero());
            CHECK(poisson_bracket(p2, za, zb).is_zero());
        }
    CHECK(poisson_bracket(p2, P("z1"), P("u1")) == P("z1"));
}

TEST_CASE("recursion operator") {
    auto [a1, a2] = remark_pair(1);
    auto s = recursion_operator_at(a1, a2, {5.0, 2.0});
    CHECK(max_abs(s.matrix - 5.0 * CMatrix::Identity(2, 2)) < 1e-14);
    auto id = recursion_operator_at(a1, a1, {5.0, 2.0});
    CHECK(max_abs(id.matrix - CMatrix::Identity(2, 2)) < 1e-14);

    auto [p1, p2] = remark_pair(2);
    auto r = recursion_operator_at(p1, p2, {0.0, 0.7, 1.0, -0.3});
    CMatrix expect = CMatrix::Zero(4, 4);
    expect(2, 2) = expect(3, 3) = 1.0;
    CHECK(max_abs(r.matrix - expect) < 1e-14);

    auto degenerate = PolyBivector::from_entries(Chart::darboux(1), {{"z1", "u1", P("z1")}});
    CHECK_THROWS_WITH_AS(recursion_operator_at(degenerate, a2, {0.0, 1.0}), "not symplectic here", MathError);
}

TEST_CASE("pfaffian polynomial") {
    auto [p1, p2] = remark_pair(2);
    auto mu = pfaffian_polynomial(p1, p2, "l");
    CHECK(mu.as_poly() == P("(l-z1)*(l-z2)"));
    CHECK(chi_equals_mu_squared(p1, p2, mu));
    for (std::size_t n = 1; n <= 3; ++n) {
        auto [a, b] = remark_pair(n);
        auto same = pfaffian_polynomial(a, a, "l");
        CHECK(same.as_poly() == P("l-1").pow(static_cast<unsigned>(n)));
        CHECK(chi_equals_mu_squared(a, b, pfaffian_polynomial(a, b, "l")));
    }
    // random compatible Q = sum f_k(z_k) d/dz_k ^ d/du_k + c * Pi_1
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> coef(-4, 4);
    Chart c = Chart::darboux(2);
    for (int trial = 0; trial < 4; ++trial) {
        std::vector<std::tuple<std::string, std::string, MultiPoly>> e;
        for (int k = 1; k <= 2; ++k) {
            std::string z = "z" + std::to_string(k);
            MultiPoly f = P(std::to_string(coef(rng)) + "*" + z + "^2+" + std::to_string(coef(rng)) + "*" + z + "+" +
                            std::to_string(coef(rng)));
            e.emplace_back(z, "u" + std::to_string(k), f);
        }
        auto q = PolyBivector::from_entries(c, e);
        REQUIRE(is_poisson_pair(p1, q).all());
        auto m = pfaffian_polynomial(p1, q, "l");
        CHECK(m.degree() == 2);
        CHECK(chi_equals_mu_squared(p1, q, m));
    }
    CHECK_THROWS_WITH_AS(pfaffian_polynomial(PolyBivector::zero(c), p2), "degenerate pencil", MathError);

    // numeric route
    auto num = pfaffian_polynomial_at(p1.eval({2.0, 1.0, -3.0, 0.5}), p2.eval({2.0, 1.0, -3.0, 0.5}));
    CHECK(std::abs(num[0] - 1.0) < 1e-12);
    CHECK(std::abs(num[1] - 1.0) < 1e-12);
    CHECK(std::abs(num[2] + 6.0) < 1e-12);
}

TEST_CASE("minimal polynomial check") {
    CMatrix five = 5.0 * CMatrix::Identity(2, 2);
    std::vector<Complex> lin{1.0, -5.0};
    CHECK(minimal_polynomial_check(five, lin));
    CMatrix d = CMatrix::Zero(4, 4);
    d(2, 2) = d(3, 3) = 1.0;
    std::vector<Complex> mu{1.0, -1.0, 0.0};
    CHECK(minimal_polynomial_check(d, mu));
    std::vector<Complex> too_big{1.0, -1.0, 0.0, 0.0};
    CHECK_FALSE(minimal_polynomial_check(d, too_big));
    std::vector<Complex> wrong{1.0, -2.0};
    CHECK_FALSE(minimal_polynomial_check(five, wrong));
}

TEST_CASE("nijenhuis tensor") {
    auto [p1, p2] = remark_pair(2);
    Point pt{0.3, -1.2, 1.7, 0.4};
    CHECK(nijenhuis_tensor(p1, p2, pt, 1e-3).max_abs() <= 1e-6);
    CHECK(nijenhuis_tensor(p1, p1, pt, 1e-3).max_abs() == 0.0);
    Chart c = Chart::darboux(2);
    auto q = PolyBivector::from_entries(c, {{"z1", "u1", P("z1^2")}, {"z2", "u2", P("1")}});
    CHECK(nijenhuis_tensor(p1, q, pt, 1e-3).max_abs() <= 1e-6);
    // a non-Poisson partner is detected
    auto bad = PolyBivector::from_entries(c, {{"z1", "z2", P("u1^2")}, {"u1", "u2", P("1")}, {"z1", "u1", P("z2")}});
    CHECK(nijenhuis_tensor(p1, bad, pt, 1e-3).max_abs() > 1e-2);
}

TEST_CASE("magri-morosi deformation") {
    auto [p1, p2] = remark_pair(2);
    std::vector<GaussRational> one{1}, z{0, 1}, z2{0, 0, 1};
    CHECK(magri_rho(p1, p2, one) == p1);
    CHECK(magri_rho(p1, p2, z) == p2);
    auto r2 = magri_rho(p1, p2, z2);
    Chart c = Chart::darboux(2);
    CHECK(r2 == PolyBivector::from_entries(c, {{"z1", "u1", P("z1^2")}, {"z2", "u2", P("z2^2")}}));
    CHECK(is_poisson_pair(p1, r2).all());

    for (std::size_t n = 1; n <= 3; ++n) {
        auto [a, b] = remark_pair(n);
        std::vector<GaussRational> rho{GaussRational::fraction(1, 2), -1, GaussRational(0, 1), 2};
        auto pr = magri_rho(a, b, rho);
        CHECK(is_poisson_pair(a, pr).all());
        CHECK(is_poisson_pair(b, pr).all());
    }
    auto p = PolyBivector::from_entries(c, {{"z1", "u1", P("z1")}, {"z2", "u2", P("1")}});
    CHECK_THROWS_WITH_AS(magri_rho(p, p1, z2), "rho(R) leaves polynomial class", MathError);
}

TEST_CASE("degeneracy rank") {
    auto [p1, p2] = remark_pair(2);
    Point pt{1.5, 0.2, -0.7, 3.0};
    CHECK(degeneracy_rank(p1, p2, 1.5, pt) == 2);
    auto [a1, a2] = remark_pair(1);
    CHECK(degeneracy_rank(a1, a2, 0.25, {0.25, 1.0}) == 0);
    auto [b1, b2] = remark_pair(3);
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 5; ++trial) {
        Point x;
        for (int k = 0; k < 6; ++k) x.push_back(uniform_complex(rng, 2.0));
        CHECK(degeneracy_rank(b1, b2, x[2], x) == 4);
    }
    CHECK_THROWS_AS(degeneracy_rank(p1, p2, 0.123, pt), MathError);
}

TEST_CASE("json round trip") {
    auto [p1, p2] = remark_pair(2);
    auto j = bivector_to_json(p2);
    CHECK(bivector_from_json(j) == p2);
    auto named = nlohmann::json::parse(
        R"({"chart": {"n": 1}, "entries": [{"row": "z1", "col": "u1", "poly": "z1^2"}]})");
    CHECK(bivector_from_json(named)(0, 1) == P("z1^2"));
    CHECK(verdict_to_json(is_poisson_pair(p1, p2))["bi_poisson"] == true);
}
