#include "bihk/cli/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <set>
#include <thread>

#include "bihk/bipoisson/recursion.hpp"
#include "bihk/error.hpp"
#include "bihk/hilbchart/hilbchart.hpp"
#include "bihk/hk4/hyper_poisson.hpp"
#include "bihk/nahm/forms.hpp"
#include "bihk/nahm/io.hpp"
#include "bihk/quatlin/hyper_poisson.hpp"
#include "bihk/svg.hpp"

namespace bihk::cli {

using bipoisson::PolyBivector;
using symcore::GaussRational;
using symcore::MultiPoly;

namespace {

ojson to_ojson(const nlohmann::json& j) { return ojson::parse(j.dump()); }

struct Builder {
    const ExperimentConfig& cfg;
    std::string prefix;
    std::vector<CheckSpec>& out;

    void add(const std::string& name, ojson inputs, double tol,
             std::function<CheckOutcome(std::uint64_t, double)> run) {
        std::string full = prefix + "/" + name;
        auto it = cfg.tolerances.find(full);
        out.push_back({full, std::move(inputs), it == cfg.tolerances.end() ? tol : it->second, std::move(run)});
    }
};

CheckOutcome count_outcome(std::size_t bad, const char* key) {
    CheckOutcome o;
    o.residual = static_cast<double>(bad);
    o.details[key] = bad;
    return o;
}

bipoisson::Point random_point(Rng& rng, std::size_t n) {
    bipoisson::Point x;
    for (std::size_t k = 0; k < 2 * n; ++k) x.push_back(uniform_complex(rng, 2.0));
    return x;
}

void bipoisson_suite(const ExperimentConfig& c, std::vector<CheckSpec>& out) {
    const std::size_t n = c.n ? c.n : 2, samples = c.samples;
    Builder b{c, "bipoisson-n2", out};
    const ojson in{{"n", n}, {"samples", samples}};

    b.add("poisson-pair", in, 0.5, [n](std::uint64_t, double) {
        auto [p, q] = standard_pair(n);
        std::size_t bad = bipoisson::schouten_bracket(p, p).nonzero().size() +
                          bipoisson::schouten_bracket(q, q).nonzero().size() +
                          bipoisson::schouten_bracket(p, q).nonzero().size();
        return count_outcome(bad, "nonzero_components");
    });
    b.add("pfaffian-square", in, 0.5, [n](std::uint64_t, double) {
        auto [p, q] = standard_pair(n);
        auto mu = bipoisson::pfaffian_polynomial(p, q);
        auto o = count_outcome(bipoisson::chi_equals_mu_squared(p, q, mu) ? 0 : 1, "mismatch");
        o.details["mu"] = mu.as_poly().to_string();
        return o;
    });
    b.add("minimal-polynomial", in, 1e-8, [n, samples](std::uint64_t seed, double tol) {
        Rng rng(seed);
        auto [p, q] = standard_pair(n);
        auto mu = bipoisson::pfaffian_polynomial(p, q);
        CheckOutcome o;
        bool minimal = true;
        for (std::size_t s = 0; s < samples; ++s) {
            auto x = random_point(rng, n);
            auto r = bipoisson::recursion_operator_at(p, q, x);
            auto m = mu.eval(p.chart(), x);
            const double scale = std::pow(std::max(1.0, max_abs(r.matrix)), static_cast<double>(n));
            o.residual = std::max(o.residual, max_abs(matrix_polynomial(m, r.matrix)) / scale);
            minimal = minimal && bipoisson::minimal_polynomial_check(r, m, tol);
        }
        o.verdict = minimal && o.residual <= tol;
        o.details["minimal"] = minimal;
        return o;
    });
    b.add("nijenhuis", in, 1e-6, [n, samples](std::uint64_t seed, double) {
        Rng rng(seed);
        auto [p, q] = standard_pair(n);
        CheckOutcome o;
        for (std::size_t s = 0; s < samples; ++s)
            o.residual = std::max(o.residual, bipoisson::nijenhuis_tensor(p, q, random_point(rng, n)).max_abs());
        return o;
    });
    b.add("magri-rho", in, 0.5, [n](std::uint64_t, double) {
        auto [p, q] = standard_pair(n);
        std::size_t bad = 0;
        for (std::size_t deg = 0; deg <= 3; ++deg) {
            std::vector<GaussRational> rho(deg + 1, GaussRational(0));
            rho[deg] = 1;
            auto r = bipoisson::magri_rho(p, q, rho);
            bad += bipoisson::is_poisson_pair(p, r).all() ? 0 : 1;
            bad += bipoisson::is_poisson_pair(q, r).all() ? 0 : 1;
        }
        return count_outcome(bad, "failed_pairs");
    });
    b.add("degeneracy-rank", in, 0.5, [n, samples](std::uint64_t seed, double) {
        Rng rng(seed);
        auto [p, q] = standard_pair(n);
        std::size_t bad = 0;
        for (std::size_t s = 0; s < samples; ++s) {
            auto x = random_point(rng, n);
            bad += bipoisson::degeneracy_rank(p, q, x[0], x) == 2 * n - 2 ? 0 : 1;
        }
        return count_outcome(bad, "rank_mismatches");
    });
}

void hilb_suite(const ExperimentConfig& c, std::vector<CheckSpec>& out) {
    using namespace hilbchart;
    const std::size_t n = c.n ? c.n : 3, samples = c.samples;
    Builder b{c, "hilb-n3", out};
    const ojson in{{"n", n}, {"samples", samples}};

    b.add("chart-bivectors", in, 0.5, [n](std::uint64_t, double) {
        std::size_t bad = 0;
        for (auto model : {SurfaceModel::plane, SurfaceModel::cstar}) {
            auto [p, q] = chart_bivectors(n, model);
            bad += bipoisson::is_poisson_pair(p, q).all() ? 0 : 1;
        }
        return count_outcome(bad, "failed_models");
    });
    b.add("pfaffian-vs-q", in, 1e-8, [n, samples](std::uint64_t seed, double) {
        Rng rng(seed);
        CheckOutcome o;
        for (std::size_t s = 0; s < samples; ++s) {
            auto t = random_transverse_point(rng, n);
            for (auto model : {SurfaceModel::plane, SurfaceModel::cstar}) {
                auto pf = pushforward_bivectors_qp(t, model);
                auto mu = bipoisson::pfaffian_polynomial_at(pf.first, pf.second);
                if (mu.size() != t.q.size()) throw MathError("Pfaffian polynomial has the wrong degree");
                for (std::size_t i = 0; i < mu.size(); ++i) o.residual = std::max(o.residual, std::abs(mu[i] - t.q[i]));
            }
        }
        return o;
    });
    b.add("minimal-polynomial", in, 1e-8, [n, samples](std::uint64_t seed, double tol) {
        Rng rng(seed);
        CheckOutcome o;
        bool minimal = true;
        for (std::size_t s = 0; s < samples; ++s) {
            auto t = random_transverse_point(rng, n);
            auto pf = pushforward_bivectors_qp(t);
            CMatrix r = bipoisson::recursion_matrix(pf.first, pf.second);
            const double scale = std::pow(std::max(1.0, max_abs(r)), static_cast<double>(n));
            o.residual = std::max(o.residual, max_abs(matrix_polynomial(t.q, r)) / scale);
            minimal = minimal && bipoisson::minimal_polynomial_check(r, t.q, tol);
        }
        o.verdict = minimal && o.residual <= tol;
        o.details["minimal"] = minimal;
        return o;
    });
    b.add("degeneracy-rank", in, 0.5, [n, samples](std::uint64_t seed, double) {
        Rng rng(seed);
        std::size_t bad = 0;
        for (std::size_t s = 0; s < samples; ++s) {
            auto t = random_transverse_point(rng, n);
            auto pf = pushforward_bivectors_qp(t);
            for (const auto& z : coeffs_to_roots(t).roots)
                bad += bipoisson::degeneracy_rank(pf.first, pf.second, z) == 2 * n - 2 ? 0 : 1;
        }
        return count_outcome(bad, "rank_mismatches");
    });
    b.add("chart-equivariance", in, 1e-8, [n, samples](std::uint64_t seed, double) {
        Rng rng(seed);
        CheckOutcome o;
        for (std::size_t s = 0; s < samples; ++s) {
            auto t = random_transverse_point(rng, n);
            auto r = coeffs_to_roots(t);
            auto pf = pushforward_bivectors_qp(t);
            auto root = root_bivectors(r);
            CMatrix j = coefficient_jacobian(r);
            CMatrix rq = bipoisson::recursion_matrix(pf.first, pf.second);
            CMatrix rr = bipoisson::recursion_matrix(root.first, root.second);
            o.residual = std::max(o.residual, max_abs(rq - j * rr * j.inverse()));
        }
        return o;
    });
    b.add("roots-roundtrip", in, 1e-9, [n, samples](std::uint64_t seed, double) {
        Rng rng(seed);
        CheckOutcome o;
        for (std::size_t s = 0; s < samples; ++s) {
            auto t = random_transverse_point(rng, n);
            auto back = roots_to_coeffs(coeffs_to_roots(t));
            for (std::size_t i = 0; i < t.q.size(); ++i) o.residual = std::max(o.residual, std::abs(back.q[i] - t.q[i]));
            for (std::size_t i = 0; i < t.p.size(); ++i) o.residual = std::max(o.residual, std::abs(back.p[i] - t.p[i]));
        }
        return o;
    });
}

void quat_suite(const ExperimentConfig& c, std::vector<CheckSpec>& out) {
    using namespace quatlin;
    const std::size_t n = c.n ? c.n : 3, samples = c.samples;
    Builder b{c, "quat-spectral-n3", out};
    const ojson in{{"n", n}, {"samples", samples}};

    b.add("doubling", in, 1e-8, [n, samples](std::uint64_t seed, double tol) {
        Rng rng(seed);
        CheckOutcome o;
        bool degrees = true;
        double truncation = 0;
        for (std::size_t s = 0; s < samples; ++s) {
            auto t = random_triple(rng, n);
            auto pencil = pencil_build(t);
            auto curve = spectral_curve(pencil);
            degrees = degrees && curve.degree_bounds_hold();
            truncation = std::max(truncation, curve.truncation_defect());
            o.residual = std::max(o.residual,
                                  doubling_check(pencil, curve, default_sample_grid(rng)).max_relative_residual);
        }
        o.verdict = degrees && o.residual <= tol;
        o.details["degree_bounds"] = degrees;
        o.details["truncation_defect"] = truncation;
        return o;
    });
    b.add("cone-intersection", in, 1e-8, [n, samples](std::uint64_t seed, double) {
        Rng rng(seed);
        CheckOutcome o;
        for (std::size_t s = 0; s < samples; ++s) {
            auto t = random_triple(rng, n);
            o.residual = std::max(o.residual, cone_intersection_check(t, default_sample_grid(rng)).max_relative_residual);
        }
        return o;
    });
    b.add("reality", in, 1e-8, [n, samples](std::uint64_t seed, double) {
        Rng rng(seed);
        CheckOutcome o;
        for (std::size_t s = 0; s < samples; ++s) {
            auto t = random_triple(rng, n);
            std::vector<Complex> zetas;
            for (const auto& pt : default_sample_grid(rng)) zetas.push_back(pt.first);
            o.residual = std::max(o.residual, spectral_curve(pencil_build(t)).reality_defect(zetas));
        }
        return o;
    });
    b.add("moore-det", in, 1e-9, [n, samples](std::uint64_t seed, double) {
        Rng rng(seed);
        CheckOutcome o;
        HermQuatTriple first;
        for (std::size_t s = 0; s < samples; ++s) {
            auto t = random_triple(rng, n);
            if (s == 0) first = t;
            for (const auto& a : t.a) {
                const double md = moore_det(a);
                const Complex det = quat_embed(a).determinant();
                o.residual = std::max(o.residual, std::abs(md * md - det) / std::max(1.0, std::abs(det)));
            }
        }
        if (samples > 0)
            o.artifacts.emplace_back(
                "moore_surface.svg",
                svg::heatmap("Moore determinant slice x2 = x3 = 0",
                             moore_surface_grid(first, {0, 0, 0, 0}, 0, 1, -4, 4, 48), -4, 4, -4, 4));
        return o;
    });
    b.add("aquaternionic", in, 1e-12, [n, samples](std::uint64_t seed, double) {
        Rng rng(seed);
        CheckOutcome o;
        for (std::size_t s = 0; s < samples; ++s) {
            auto t = random_triple(rng, n);
            o.residual = std::max(o.residual, aquaternionic_defect(aquaternionic_assemble(t), n));
            o.residual = std::max(o.residual, quaternionic_defect(left_mult_real(random_quat_matrix(rng, n, n)), n));
        }
        return o;
    });
    b.add("twozero", in, 1e-10, [n, samples](std::uint64_t seed, double) {
        Rng rng(seed);
        CheckOutcome o;
        for (std::size_t s = 0; s < samples; ++s) {
            auto t = random_triple(rng, n);
            CMatrix direct = twozero_part(linear_hyper_poisson(t), complex_structure(1, n));
            o.residual = std::max(o.residual, max_abs(direct - twozero_closed_form(t)));
        }
        return o;
    });
    b.add("pencil-symmetry", in, 1e-12, [n, samples](std::uint64_t seed, double) {
        Rng rng(seed);
        CheckOutcome o;
        for (std::size_t s = 0; s < samples; ++s) {
            auto t = random_triple(rng, n);
            std::vector<Complex> zetas;
            for (int i = 0; i < 5; ++i) zetas.push_back(uniform_complex(rng, 1.5));
            o.residual = std::max(o.residual, pencil_symmetry_defect(pencil_build(t), zetas));
        }
        return o;
    });
}

void hk4_suite(const ExperimentConfig& c, std::vector<CheckSpec>& out) {
    using namespace hk4;
    const std::size_t points = 10 * c.samples;
    Builder b{c, "hk4", out};
    auto model_of = [](bool nut) {
        return HKModel4::gibbons_hawking(nut ? HarmonicSpec::taubnut(1.0) : HarmonicSpec::flat());
    };
    for (bool nut : {false, true}) {
        const std::string tag = nut ? "taubnut" : "flat";
        const ojson in{{"model", tag}, {"points", points}};
        b.add("model-" + tag, in, 1e-6, [=](std::uint64_t seed, double) {
            Rng rng(seed);
            auto r = check_model(model_of(nut), random_points(rng, points));
            CheckOutcome o;
            o.residual = r.max();
            o.details = {{"algebra", r.algebra},
                         {"compatibility", r.compatibility},
                         {"closedness", r.closedness},
                         {"moment_map", r.moment_map}};
            return o;
        });
        b.add("hyper-poisson-" + tag, in, 1e-6, [=](std::uint64_t seed, double tol) {
            Rng rng(seed);
            auto m = model_of(nut);
            auto v = check_hyper_poisson(m, HPTriple4::moment_maps(m), random_points(rng, points), tol);
            CheckOutcome o;
            o.residual = std::max(v.max_residual, v.max_residual_half);
            o.verdict = v.passed;
            auto j = verdict_to_json(v);
            j.erase("per_point");
            o.details = to_ojson(j);
            return o;
        });
    }
    const ojson in{{"model", "taubnut"}, {"points", points}};
    b.add("corrupted-rejected", in, 1e-6, [=](std::uint64_t seed, double tol) {
        Rng rng(seed);
        auto m = model_of(true);
        HPTriple4 bent = HPTriple4::moment_maps(m);
        bent.f[2] = [](const Vec4& p) { return p(3) + 0.3 * std::sin(p(1)); };
        auto v = check_hyper_poisson(m, bent, random_points(rng, points), tol);
        CheckOutcome o;
        o.residual = v.max_residual;
        o.verdict = !v.passed;
        o.details["rejected"] = !v.passed;
        o.details["halving_ratio"] = v.halving_ratio;
        return o;
    });
    b.add("twozero", in, 1e-10, [=](std::uint64_t seed, double) {
        Rng rng(seed);
        auto m = model_of(true);
        auto f = HPTriple4::moment_maps(m);
        CheckOutcome o;
        for (const auto& p : random_points(rng, points)) {
            CMat4 diff = twozero_part(m, assemble_bivector(m, f, p), p) - twozero_formula(m, f, p);
            o.residual = std::max(o.residual, diff.cwiseAbs().maxCoeff());
        }
        return o;
    });
}

class SharedSolution {
public:
    explicit SharedSolution(nahm::NahmRunSpec s) : spec_(s) {}
    const nahm::NahmData& get() {
        std::call_once(once_, [this] {
            try {
                data_ = nahm::run_nahm(spec_);
            } catch (...) {
                error_ = std::current_exception();
            }
        });
        if (error_) std::rethrow_exception(error_);
        return data_;
    }

private:
    nahm::NahmRunSpec spec_;
    std::once_flag once_;
    nahm::NahmData data_;
    std::exception_ptr error_;
};

std::array<nahm::NahmTangent, 4> constant_basis(const nahm::NahmData& d) {
    std::array<nahm::NahmTangent, 4> out;
    for (int a = 0; a < 4; ++a) {
        std::array<Complex, 4> e{};
        e[a] = 1.0;
        out[a] = nahm::constant_tangent(d, e);
    }
    return out;
}

void nahm_suite(const ExperimentConfig& c, std::vector<CheckSpec>& out) {
    nahm::NahmRunSpec spec;
    spec.charge = c.k;
    Rng rng(derive_seed(c.seed, 0xa11));
    for (auto& x : spec.center) x = uniform(rng, -0.5, 0.5);
    auto shared = std::make_shared<SharedSolution>(spec);
    Builder b{c, "nahm-k2", out};
    const ojson in{{"k", spec.charge},     {"kappa", spec.kappa}, {"step", spec.step},
                   {"delta", spec.delta},  {"order", spec.order}, {"center", spec.center}};

    b.add("solution", in, 1e-6, [shared](std::uint64_t, double) {
        const auto& d = shared->get();
        CheckOutcome o;
        o.residual = nahm::residual(d);
        o.details = {{"anti_hermitian", nahm::anti_hermitian_defect(d)},
                     {"pole_match", d.k > 1 ? nahm::pole_match_defect(d) : 0.0},
                     {"scale", d.scale},
                     {"grid_points", d.size()}};
        return o;
    });
    b.add("lax-drift", in, 1e-6, [shared](std::uint64_t, double) {
        const auto& d = shared->get();
        auto r = nahm::lax_isospectral(d, {0.0, Complex(0.5, 0.2), 1.0, Complex(-0.3, 1.1), Complex(0, -2)});
        CheckOutcome o;
        o.residual = r.max_drift;
        o.details = to_ojson(nahm::drift_to_json(r));
        o.details.erase("series");
        o.details.erase("times");
        std::vector<svg::Series> drift;
        for (std::size_t z = 0; z < r.zetas.size(); ++z) {
            svg::Series s{"zeta " + std::to_string(z), r.times, {}};
            for (double v : r.series[z]) s.y.push_back(std::max(v, 1e-18));
            drift.push_back(std::move(s));
        }
        o.artifacts.emplace_back("nahm_drift.svg", svg::line_plot("char L(zeta) coefficient drift", drift, true));
        if (d.k == 2) {
            std::array<svg::Series, 3> f{svg::Series{"f1", {}, {}}, {"f2", {}, {}}, {"f3", {}, {}}};
            auto prof = nahm::euler_profiles(d);
            for (std::size_t i = 0; i < prof.size(); ++i)
                for (int a = 0; a < 3; ++a)
                    if (std::abs(prof[i][a]) < 50) {
                        f[a].x.push_back(d.grid[i]);
                        f[a].y.push_back(prof[i][a]);
                    }
            o.artifacts.emplace_back("nahm_profiles.svg",
                                     svg::line_plot("Euler top profiles", {f.begin(), f.end()}));
        }
        return o;
    });
    b.add("casimir", in, 1e-12, [k = spec.charge, order = spec.order](std::uint64_t, double) {
        const Complex got = nahm::casimir_coefficient(nahm::pole_series(k, 0, order));
        const double want = -k * (k * k - 1) / 4.0;
        CheckOutcome o;
        o.residual = std::abs(got - want);
        o.details = {{"coefficient", got.real()}, {"expected", want}};
        return o;
    });
    b.add("routes", in, 1e-6, [shared](std::uint64_t, double) {
        const auto& d = shared->get();
        auto t = constant_basis(d);
        CheckOutcome o;
        for (int a = 0; a < 4; ++a)
            for (int b2 = a + 1; b2 < 4; ++b2) {
                const Complex direct = nahm::twozero_direct(d, t[a], t[b2]);
                const Complex key = nahm::twozero_key(d, t[a], t[b2]);
                const Complex beta = -kI * nahm::twozero_via_beta(d, t[a], t[b2]);
                const double scale = std::max({1.0, std::abs(direct), std::abs(key)});
                o.residual = std::max({o.residual, std::abs(direct - key) / scale, std::abs(key - beta) / scale,
                                       std::abs(direct - beta) / scale});
            }
        return o;
    });
    b.add("form-reality", in, 1e-8, [shared](std::uint64_t, double) {
        const auto& d = shared->get();
        auto t = constant_basis(d);
        CheckOutcome o;
        for (int a = 0; a < 4; ++a)
            for (int b2 = 0; b2 < 4; ++b2) {
                const Complex s = nahm::hyper_poisson_2form(d, t[a], t[b2]);
                const Complex st = nahm::hyper_poisson_2form(d, t[b2], t[a]);
                o.residual = std::max({o.residual, std::abs(s.imag()), std::abs(s + st)});
            }
        return o;
    });
    b.add("contraction", in, 1e-4, [shared](std::uint64_t, double) {
        const auto& d = shared->get();
        auto r = nahm::contraction_check(d);
        CheckOutcome o;
        o.residual = r.max_residual;
        o.details = to_ojson(nahm::contraction_to_json(r));
        return o;
    });
}

}  // namespace

std::pair<PolyBivector, PolyBivector> standard_pair(std::size_t n) {
    if (n == 0) throw InputError("n must be positive");
    auto c = bipoisson::Chart::darboux(n);
    std::vector<std::tuple<std::string, std::string, MultiPoly>> e1, e2;
    for (std::size_t k = 1; k <= n; ++k) {
        std::string z = "z" + std::to_string(k), u = "u" + std::to_string(k);
        e1.emplace_back(z, u, MultiPoly(1));
        e2.emplace_back(z, u, MultiPoly::variable(z));
    }
    return {PolyBivector::from_entries(c, e1), PolyBivector::from_entries(c, e2)};
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"bipoisson-n2", "hilb-n3", "quat-spectral-n3", "hk4", "nahm-k2", "all"};
    return names;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("config must be a JSON object");
    static const std::set<std::string> keys{"suite", "seed",   "n",   "k",           "samples",      "tolerances",
                                            "out",   "format", "threads", "deterministic"};
    for (const auto& [key, value] : j.items())
        if (!keys.count(key)) throw InputError("unknown config key '" + key + "'");
    ExperimentConfig c;
    try {
        if (j.contains("suite")) c.suite = j.at("suite").get<std::string>();
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("n")) c.n = j.at("n").get<std::size_t>();
        if (j.contains("k")) c.k = j.at("k").get<int>();
        if (j.contains("samples")) c.samples = j.at("samples").get<std::size_t>();
        if (j.contains("tolerances")) c.tolerances = j.at("tolerances").get<std::map<std::string, double>>();
        if (j.contains("out")) c.out_dir = j.at("out").get<std::string>();
        if (j.contains("format")) c.format = parse_format(j.at("format").get<std::string>());
        if (j.contains("threads")) c.threads = j.at("threads").get<std::size_t>();
        if (j.contains("deterministic")) c.deterministic = j.at("deterministic").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed config: ") + e.what());
    }
    return c;
}

void validate_config(const ExperimentConfig& c) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), c.suite) == names.end())
        throw InputError("unknown suite '" + c.suite + "'");
    if (c.n > 6) throw InputError("n must be at most 6");
    if (c.k != 1 && c.k != 2) throw InputError("k must be 1 or 2");
    if (c.samples == 0) throw InputError("samples must be positive");
    for (const auto& [name, tol] : c.tolerances)
        if (!(tol > 0) || !std::isfinite(tol)) throw InputError("tolerance for '" + name + "' must be positive");
}

std::vector<CheckSpec> suite_checks(const ExperimentConfig& c) {
    validate_config(c);
    std::vector<CheckSpec> out;
    if (c.suite == "all") {
        for (const auto& name : suite_names())
            if (name != "all") {
                ExperimentConfig sub = c;
                sub.suite = name;
                sub.n = 0;
                auto part = suite_checks(sub);
                std::move(part.begin(), part.end(), std::back_inserter(out));
            }
    } else if (c.suite == "bipoisson-n2") {
        bipoisson_suite(c, out);
    } else if (c.suite == "hilb-n3") {
        hilb_suite(c, out);
    } else if (c.suite == "quat-spectral-n3") {
        quat_suite(c, out);
    } else if (c.suite == "hk4") {
        hk4_suite(c, out);
    } else {
        nahm_suite(c, out);
    }
    return out;
}

Report run_checks(const std::string& suite, std::uint64_t seed, const std::vector<CheckSpec>& checks,
                  std::size_t threads) {
    Report r{suite, seed, std::vector<CheckRecord>(checks.size())};
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, std::max<std::size_t>(checks.size(), 1));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < checks.size();) {
            const auto& spec = checks[i];
            auto& rec = r.checks[i];
            rec.name = spec.name;
            rec.seed = derive_seed(seed, i);
            rec.tolerance = spec.tolerance;
            rec.inputs_digest = fnv1a_hex(spec.inputs.dump() + "|" + std::to_string(rec.seed));
            rec.details["inputs"] = spec.inputs;
            const auto start = std::chrono::steady_clock::now();
            try {
                auto o = spec.run(rec.seed, spec.tolerance);
                rec.residual = o.residual;
                rec.passed = o.verdict.value_or(std::isfinite(o.residual) && o.residual <= spec.tolerance);
                for (auto& [key, value] : o.details.items()) rec.details[key] = value;
                rec.artifacts = std::move(o.artifacts);
            } catch (const std::exception& e) {
                rec.residual = std::numeric_limits<double>::infinity();
                rec.passed = false;
                rec.error = e.what();
            }
            rec.runtime_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return r;
}

Report run_suite(const ExperimentConfig& c) { return run_checks(c.suite, c.seed, suite_checks(c), c.threads); }

}  // namespace bihk::cli
