#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bihk/error.hpp"
#include "bihk/nahm/io.hpp"
#include "bihk/symcore/multipoly.hpp"

using namespace bihk;
using namespace bihk::nahm;
using symcore::GaussRational;
using symcore::MultiPoly;

namespace {

CMatrix comm(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

const NahmData& two_pole() {
    static const NahmData d = [] {
        NahmRunSpec s;
        s.center = {0.1, 0.3, -0.2, 0.5};
        return run_nahm(s);
    }();
    return d;
}

NahmData constant_data(std::array<double, 4> x) {
    NahmRunSpec s;
    s.charge = 1;
    s.center = x;
    return run_nahm(s);
}

std::array<NahmTangent, 4> basis(const NahmData& d) {
    std::array<NahmTangent, 4> out;
    for (int a = 0; a < 4; ++a) {
        std::array<Complex, 4> c{};
        c[a] = 1.0;
        out[a] = constant_tangent(d, c);
    }
    return out;
}

MultiPoly var(const std::string& s) { return MultiPoly::variable(s); }
MultiPoly num(GaussRational c) { return MultiPoly::monomial({}, {}, c); }

}  // namespace

TEST_CASE("su(2) residues") {
    for (int k = 2; k <= 5; ++k) {
        auto r = residues(k, 0);
        for (int a = 0; a < 3; ++a) {
            CHECK(max_abs(-r[a] - comm(r[(a + 1) % 3], r[(a + 2) % 3])) < 1e-13);
            CHECK(max_abs(r[a] + r[a].adjoint()) < 1e-15);
        }
        auto r2 = residues(k, 2);
        CHECK(max_abs(-r2[0] - comm(r2[1], r2[2])) < 1e-13);
        CHECK(casimir_coefficient(pole_series(k, 0, 1)).real() == doctest::Approx(-k * (k * k - 1) / 4.0).epsilon(1e-14));
    }
    CHECK(casimir_coefficient(pole_series(2, 0, 1)) == Complex(-1.5, 0.0));
    CHECK_THROWS_AS(residues(2, 1), InputError);
}

TEST_CASE("pole_series") {
    CHECK(recurrence_nullity(2, 0, -1) == 3);
    CHECK(recurrence_nullity(2, 0, 0) == 3);
    CHECK(recurrence_nullity(2, 0, 1) == 5);
    CHECK(recurrence_nullity(2, 0, 2) == 0);

    auto k1 = pole_series(1, 0, 3);
    for (int a = 0; a < 4; ++a)
        for (int j = -1; j <= 3; ++j) CHECK(std::abs(k1.t[a].coeff(j)(0, 0)) == 0.0);

    auto p = pole_series(2, 0, 4);
    CHECK(series_residual(p, 1e-2) < 1e-4);
    CHECK(series_residual(pole_series(2, 2, 4), -1e-2) < 1e-4);

    auto e = euler_top_coefficients(0.6, 1.75);
    auto frame = euler_frame();
    std::array<CMatrix, 3> c1{e.a[0] * frame[0], e.a[1] * frame[1], e.a[2] * frame[2]};
    auto pe = pole_series(2, 0, 8, {{1, c1}});
    CHECK(series_residual(pe, 0.05) < 1e-8);
    std::array<CMatrix, 3> bad{frame[0], CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)};
    CHECK_THROWS_AS(pole_series(2, 0, 3, {{1, bad}}), MathError);
    CHECK_THROWS_AS(pole_series(2, 0, 9), InputError);
}

TEST_CASE("laurent series arithmetic") {
    ScalarSeries a(-1, 2, Complex(0.0)), b(0, 3, Complex(0.0));
    a.set(-1, 2.0);
    a.set(1, 1.0);
    b.set(0, 3.0);
    b.set(2, -1.0);
    auto c = a * b;
    CHECK(c.lo() == -1);
    CHECK(c.hi() == 2);
    CHECK(c.coeff(-1) == Complex(6.0));
    CHECK(c.coeff(1) == Complex(1.0));  // -2 + 3
    CHECK(std::abs(integrate_series(b, 0.0, 1.0) - Complex(3.0 - 1.0 / 3)) < 1e-15);
    CHECK_THROWS_AS(integrate_series(a, 0.0, 1.0), MathError);
}

TEST_CASE("constant k=1 solutions") {
    auto d = constant_data({0.0, 1.0, -2.0, 0.5});
    CHECK(residual(d) == 0.0);
    CHECK(lax_isospectral(d, {0.5, Complex(0, 1)}).max_drift == 0.0);
    CHECK(potential_F(d) == doctest::Approx(-2 * (1.0 + 4.0 + 0.25)).epsilon(1e-12));
    CHECK(potential_F(constant_data({0, 0, 0, 0})) == 0.0);
    CHECK_THROWS_AS(run_nahm(NahmRunSpec{3}), InputError);
}

TEST_CASE("two-pole k=2 solution") {
    const auto& d = two_pole();
    CHECK(d.scale == doctest::Approx(std::comp_ellint_1(0.6)).epsilon(1e-10));
    CHECK(residual(d) < 1e-6);
    CHECK(anti_hermitian_defect(d) < 1e-9);
    CHECK(pole_match_defect(d) < 1e-6);
    CHECK(d.grid.size() % 2 == 1);

    auto f = euler_profiles(d);
    const double d2 = d.scale * d.scale;
    double drift = 0;
    for (const auto& x : f) {
        drift = std::max(drift, std::abs(x[2] * x[2] - x[0] * x[0] - d2));
        drift = std::max(drift, std::abs(x[1] * x[1] - x[0] * x[0] - d2 * (1 - 0.36)));
    }
    CHECK(drift < 1e-8);
    CHECK(std::abs(f[f.size() / 2][0]) < 1e-8);

    auto r = lax_isospectral(d, {0.0, Complex(0.5, 0.2), 1.0, Complex(-0.3, 1.1), Complex(0, -2)});
    CHECK(r.max_drift < 1e-6);
    CHECK(beta_spectrum_drift(d) < 1e-8);

    NahmData corrupt = d;
    corrupt.samples[500][1](0, 0) += 1e-3;
    CHECK(residual(corrupt) > 1e-2);
}

TEST_CASE("tangents") {
    const auto& d = two_pole();
    auto phase = tangent_solve(d, translation_family(d, {1, 0, 0, 0}));
    CHECK(max_abs(phase.samples[100][0] - kI * CMatrix::Identity(2, 2)) < 1e-9);
    CHECK(max_abs(phase.samples[100][1]) < 1e-12);
    auto tr = tangent_solve(d, translation_family(d, {0, 1, 0, 0}));
    CHECK(linearized_residual(d, tr) < 1e-9);
    auto scaling = [&](double eps) {
        NahmData out = d;
        for (auto& q : out.samples)
            for (auto& m : q) m *= 1 + eps;
        return out;
    };
    CHECK_THROWS_WITH_AS(tangent_solve(d, scaling), "family leaves the solution space", MathError);

    auto k1 = constant_data({0.2, 0.1, 0.4, -0.3});
    CHECK(linearized_residual(k1, constant_tangent(k1, {0.3, -1.0, 2.0, 0.7})) == 0.0);
}

TEST_CASE("metric and Kaehler forms") {
    auto k1 = constant_data({0, 0, 0, 0});
    auto e = basis(k1);
    CHECK(std::abs(metric_eval(k1, e[0], e[0]) - 2.0) < 1e-12);
    CHECK(std::abs(metric_eval(k1, e[1], e[2])) < 1e-15);
    auto om = kahler_forms_eval(k1, e[0], e[2]);
    CHECK(std::abs(om[1] - 2.0) < 1e-12);

    const auto& d = two_pole();
    auto t = basis(d);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            CHECK(std::abs(metric_eval(d, t[a], t[b]) - (a == b ? 4.0 : 0.0)) < 1e-6);
            auto w = kahler_forms_eval(d, t[a], t[b]);
            auto wt = kahler_forms_eval(d, t[b], t[a]);
            for (int i = 0; i < 3; ++i) CHECK(std::abs(w[i] + wt[i]) < 1e-12);
            CHECK(std::abs(w[1] - omega2_explicit(d, t[a], t[b])) < 1e-8);
            CHECK(std::abs(w[2] - omega3_explicit(d, t[a], t[b])) < 1e-8);
            CHECK(std::abs(w[1] + kI * w[2] - holomorphic_form(d, t[a], t[b])) < 1e-8);
        }
}

TEST_CASE("k=1 symbolic oracle for the hyper-Poisson form") {
    // T_i = i x_i, u = i c, v = i d, integrated over an interval of length 2
    const MultiPoly i = num(GaussRational::unit_i());
    std::array<MultiPoly, 4> T{num(0), i * var("x1"), i * var("x2"), i * var("x3")};
    std::array<MultiPoly, 4> u, v;
    for (int a = 0; a < 4; ++a) {
        u[a] = i * var("c" + std::to_string(a));
        v[a] = i * var("d" + std::to_string(a));
    }
    auto w = [&](int a, int b) { return u[a] * v[b] - v[a] * u[b]; };
    MultiPoly integrand = num(0);
    for (int a = 1; a <= 3; ++a) {
        const int b = a % 3 + 1, c = b % 3 + 1;
        integrand += T[a] * (w(a, 0) - w(0, a)) + T[a] * (w(b, c) - w(c, b));
    }
    MultiPoly sigma = integrand.scale(GaussRational(0, -1) * GaussRational::fraction(1, 4) * 2);
    MultiPoly closed = num(0);
    for (int a = 1; a <= 3; ++a) {
        const std::string s = std::to_string(a);
        closed -= var("x" + s) * (var("c" + s) * var("d0") - var("c0") * var("d" + s));
    }
    closed -= var("x1") * (var("c2") * var("d3") - var("c3") * var("d2")) +
              var("x2") * (var("c3") * var("d1") - var("c1") * var("d3")) +
              var("x3") * (var("c1") * var("d2") - var("c2") * var("d1"));
    CHECK(sigma == closed);

    // quarter of sum mu_a omega_a with mu = (-2x1, 2x2, 2x3)
    auto pair = [&](int a, int b, int c, int e) { return (w(a, b) + w(c, e)).scale(-2); };
    MultiPoly om1 = (w(0, 1) - w(2, 3)).scale(2), om2 = pair(0, 2, 1, 3), om3 = pair(0, 3, 2, 1);
    MultiPoly mu_omega = var("x1").scale(-2) * om1 + var("x2").scale(2) * om2 + var("x3").scale(2) * om3;
    CHECK(sigma == mu_omega.scale(GaussRational::fraction(1, 4)));

    // numeric pipeline against the oracle at rational points
    std::map<std::string, Complex> pt{{"x1", 0.5}, {"x2", -0.25}, {"x3", 1.5}, {"c0", 1}, {"c1", -2}, {"c2", 0.5},
                                      {"c3", 3}, {"d0", 0.25}, {"d1", 1}, {"d2", -1}, {"d3", 2}};
    auto d = constant_data({0.0, 0.5, -0.25, 1.5});
    auto cu = constant_tangent(d, {1.0, -2.0, 0.5, 3.0});
    auto cv = constant_tangent(d, {0.25, 1.0, -1.0, 2.0});
    CHECK(std::abs(hyper_poisson_2form(d, cu, cv) - sigma.eval(pt)) < 1e-12);
    auto om = kahler_forms_eval(d, cu, cv);
    CHECK(std::abs(om[0] - om1.eval(pt)) < 1e-12);
    CHECK(std::abs(hyper_poisson_2form(d, cu, cv) -
                   kHyperPoissonNormalization * (-2 * 0.5 * om[0] + 2 * -0.25 * om[1] + 2 * 1.5 * om[2])) < 1e-12);
}

TEST_CASE("hyper-Poisson form: types and routes") {
    for (const NahmData* d : {&two_pole()}) {
        auto t = basis(*d);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                const Complex s = hyper_poisson_2form(*d, t[a], t[b]);
                CHECK(std::abs(s.imag()) < 1e-8);
                CHECK(std::abs(s + hyper_poisson_2form(*d, t[b], t[a])) < 1e-12);
                auto sp = hyper_poisson_split(*d, t[a], t[b]);
                CHECK(std::abs(sp.part02 + sp.part11 + sp.part20 - s) < 1e-8);
                auto ip = hyper_poisson_split(*d, apply_structure(1, t[a]), t[b]);
                CHECK(std::abs(ip.part02 + kI * sp.part02) < 1e-8);
                CHECK(std::abs(ip.part20 - kI * sp.part20) < 1e-8);
                auto ipp = hyper_poisson_split(*d, apply_structure(1, t[a]), apply_structure(1, t[b]));
                CHECK(std::abs(ipp.part11 - sp.part11) < 1e-8);
                const Complex direct = twozero_direct(*d, t[a], t[b]), key = twozero_key(*d, t[a], t[b]);
                const Complex beta = twozero_via_beta(*d, t[a], t[b]);
                const double scale = std::max(1.0, std::abs(direct));
                CHECK(std::abs(direct - key) <= 1e-6 * scale);
                CHECK(std::abs(key + kI * beta) <= 1e-6 * scale);
            }
        CHECK(std::abs(twozero_via_beta(*d, t[2], t[2])) < 1e-12);
    }
    NahmData bad = two_pole();
    bad.tail0[1].set(-1, bad.tail0[1].coeff(-1) + kI * CMatrix::Identity(2, 2));
    auto t = basis(bad);
    CHECK_THROWS_AS(hyper_poisson_2form(bad, t[0], t[1]), MathError);
}

TEST_CASE("potential and contraction identity") {
    auto k1 = constant_data({0.4, 0.3, -0.2, 0.5});
    auto c1 = contraction_check(k1);
    CHECK(c1.max_residual < 1e-10);
    CHECK(c1.lhs[0] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(c1.lhs[2] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(c1.rhs[1] + 0.2) < 1e-10);

    const auto& d = two_pole();
    auto c2 = contraction_check(d);
    CHECK(c2.max_residual < 1e-4);
    CHECK(c2.lhs[0] == doctest::Approx(0.6).epsilon(1e-8));
    auto phase = named_tangent(d, "phase");
    CHECK(std::abs(killing_contraction(d, phase)) < 1e-14);
    CHECK(std::abs(potential_F(translate(d, {0.3, 0, 0, 0})) - potential_F(d)) < 1e-10);
    CHECK(std::isfinite(potential_F(d)));
    // F is quadratic along translations, so halving the step leaves the residual at roundoff
    CHECK(contraction_check(d, 5e-5).max_residual < 1e-4);
}

TEST_CASE("json round trip and pair specs") {
    const auto& d = two_pole();
    auto j = nahm_to_json(d);
    CHECK(j["certificate"]["residual"].get<double>() < 1e-6);
    auto back = nahm_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.size() == d.size());
    CHECK(max_abs(back.samples[37][2] - d.samples[37][2]) == 0.0);
    CHECK(potential_F(back) == doctest::Approx(potential_F(d)).epsilon(1e-14));
    j["samples"].erase(0);
    CHECK_THROWS_AS(nahm_from_json(j), InputError);
    CHECK_THROWS_AS(nahm_from_json(nlohmann::json::parse("{}")), InputError);

    auto pairs = parse_pairs("phase:x1,x2:x3");
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[1].first == "x2");
    CHECK_THROWS_AS(parse_pairs("phase"), InputError);
    CHECK_THROWS_AS(named_tangent(d, "x4"), InputError);
}
