#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bihk/bipoisson/recursion.hpp"
#include "bihk/cli/suites.hpp"
#include "bihk/hilbchart/hilbchart.hpp"
#include "bihk/hk4/hyper_poisson.hpp"
#include "bihk/nahm/forms.hpp"
#include "bihk/quatlin/hyper_poisson.hpp"

using namespace bihk;

namespace {

const Eigen::Matrix4d kFlip = Eigen::Vector4d(1, -1, 1, 1).asDiagonal();

nahm::NahmData constant_solution(std::array<double, 4> x) {
    nahm::NahmRunSpec s;
    s.charge = 1;
    s.center = x;
    return nahm::run_nahm(s);
}

std::array<nahm::NahmTangent, 4> basis(const nahm::NahmData& d) {
    std::array<nahm::NahmTangent, 4> out;
    for (int a = 0; a < 4; ++a) {
        std::array<Complex, 4> c{};
        c[a] = 1.0;
        out[a] = nahm::constant_tangent(d, c);
    }
    return out;
}

}  // namespace

TEST_CASE("k=1 monopole moduli are the flat hyperkaehler R^4 up to orientation and scale") {
    auto d = constant_solution({0.3, -0.7, 0.2, 1.1});
    auto t = basis(d);
    const auto flat = hk4::HKModel4::gibbons_hawking(hk4::HarmonicSpec::flat());
    const hk4::Vec4 p(0.3, -0.7, 0.2, 1.1);
    for (int a = 1; a <= 3; ++a) {
        Eigen::Matrix4d w = 2.0 * kFlip * flat.kaehler_form(a, p) * kFlip;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                auto om = nahm::kahler_forms_eval(d, t[i], t[j]);
                CHECK(std::abs(om[a - 1] - w(i, j)) < 1e-12);
            }
        Eigen::Matrix4d ia = kFlip * flat.complex_structure(a, p) * kFlip;
        CHECK((ia - quatlin::complex_structure(a, 1)).cwiseAbs().maxCoeff() < 1e-14);
    }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(std::abs(nahm::metric_eval(d, t[i], t[j]) - 2.0 * flat.metric(p)(i, j)) < 1e-12);
}

TEST_CASE("hyper-Poisson form of the k=1 moduli is a quarter of sum mu_a omega_a") {
    Rng rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        std::array<double, 4> x{};
        for (auto& v : x) v = uniform(rng, -2, 2);
        auto d = constant_solution(x);
        auto t = basis(d);
        // moment maps of the Kaehler forms above: -2 x1, 2 x2, 2 x3
        const std::array<double, 3> mu{-2 * x[1], 2 * x[2], 2 * x[3]};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                auto om = nahm::kahler_forms_eval(d, t[i], t[j]);
                Complex rhs = 0;
                for (int a = 0; a < 3; ++a) rhs += mu[a] * om[a];
                CHECK(std::abs(nahm::hyper_poisson_2form(d, t[i], t[j]) - nahm::kHyperPoissonNormalization * rhs) <
                      1e-12);
            }
        auto c = nahm::contraction_check(d);
        for (int a = 0; a < 3; ++a) CHECK(c.lhs[a] == doctest::Approx(x[a + 1]).epsilon(1e-12));
    }
}

TEST_CASE("symbolic root-chart pair agrees with the numeric chart maps") {
    Rng rng(2);
    for (std::size_t n = 1; n <= 3; ++n)
        for (auto model : {hilbchart::SurfaceModel::plane, hilbchart::SurfaceModel::cstar}) {
            auto [p1, p2] = hilbchart::chart_bivectors(n, model);
            REQUIRE(bipoisson::is_poisson_pair(p1, p2).all());
            auto mu = bipoisson::pfaffian_polynomial(p1, p2);
            for (int trial = 0; trial < 3; ++trial) {
                auto t = hilbchart::random_transverse_point(rng, n);
                auto r = hilbchart::coeffs_to_roots(t);
                auto x = r.coords();
                auto num = hilbchart::root_bivectors(r, model);
                CHECK(max_abs(p1.eval(x) - num.first) < 1e-12);
                CHECK(max_abs(p2.eval(x) - num.second) < 1e-12);
                auto coeffs = mu.eval(p1.chart(), x);
                for (std::size_t i = 0; i < coeffs.size(); ++i) CHECK(std::abs(coeffs[i] - t.q[i]) < 1e-9);
                auto pf = hilbchart::pushforward_bivectors_qp(t, model);
                CMatrix j = hilbchart::coefficient_jacobian(r);
                CHECK(max_abs(j * num.first * j.transpose() - pf.first) < 1e-8);
            }
        }
}

TEST_CASE("linear hyper-Poisson bivector on H agrees with the Gibbons-Hawking flat model") {
    const auto flat = hk4::HKModel4::gibbons_hawking(hk4::HarmonicSpec::flat());
    const hk4::Vec4 p(0.1, 0.4, -1.2, 0.8);
    auto f = hk4::HPTriple4::constant(0.5, -1.5, 2.0);
    auto t = quatlin::HermQuatTriple::scalar(0.5, -1.5, 2.0);
    Eigen::Matrix4d pi = kFlip * hk4::assemble_bivector(flat, f, p) * kFlip;
    CHECK((pi - quatlin::linear_hyper_poisson(t)).cwiseAbs().maxCoeff() < 1e-14);
    Eigen::Matrix4cd tz = kFlip * hk4::twozero_formula(flat, f, p) * kFlip;
    CHECK((tz - quatlin::twozero_closed_form(t)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("all suite is independent of thread count") {
    cli::ExperimentConfig c;
    c.suite = "all";
    c.samples = 3;
    c.threads = 1;
    auto serial = cli::run_suite(c);
    c.threads = 4;
    auto parallel = cli::run_suite(c);
    CHECK(serial.all_passed());
    CHECK(cli::report_to_json(serial, true).dump() == cli::report_to_json(parallel, true).dump());
}
