#include "bihk/cli/commands.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "bihk/bipoisson/io.hpp"
#include "bihk/cli/suites.hpp"
#include "bihk/error.hpp"
#include "bihk/hilbchart/hilbchart.hpp"
#include "bihk/hk4/hyper_poisson.hpp"
#include "bihk/json_util.hpp"
#include "bihk/nahm/forms.hpp"
#include "bihk/nahm/io.hpp"
#include "bihk/quatlin/pencil.hpp"
#include "bihk/svg.hpp"

namespace bihk::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using json_util::from_complex;

namespace {

struct Globals {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format = "json";
    bool deterministic = false;
    std::size_t threads = 0;
};

json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot read " + path);
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw InputError("malformed JSON in " + path + ": " + e.what());
    }
}

// BIHK_OUT_DIR wins over --out, which wins over the fallback.
fs::path resolve_out_dir(const Globals& g, const fs::path& fallback) {
    if (const char* env = std::getenv("BIHK_OUT_DIR"); env && *env) return env;
    if (!g.out.empty()) return g.out;
    return fallback;
}

void write_text(const fs::path& path, const std::string& text) {
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    if (ec) throw std::runtime_error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << text;
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

bool wants_files(const Globals& g) { return !g.out.empty() || std::getenv("BIHK_OUT_DIR"); }

int finish(std::ostream& out, const Globals& g, const std::string& name, json report, bool passed) {
    report["passed"] = passed;
    if (wants_files(g)) {
        auto path = resolve_out_dir(g, "bihk-out") / (name + ".json");
        write_text(path, report.dump(2) + "\n");
    }
    out << report.dump(2) << "\n";
    return passed ? 0 : kExitFail;
}

int cmd_bipoisson(std::ostream& out, const Globals& g, const std::string& in, std::size_t n) {
    bipoisson::PolyBivector p, q;
    if (!in.empty()) {
        auto j = read_json_file(in);
        if (!j.is_object() || !j.contains("first") || !j.contains("second"))
            throw InputError(in + ": expected {\"first\": bivector, \"second\": bivector}");
        try {
            p = bipoisson::bivector_from_json(j["first"]);
            q = bipoisson::bivector_from_json(j["second"]);
        } catch (const json::exception& e) {
            throw InputError(in + ": malformed bivector: " + e.what());
        }
    } else {
        std::tie(p, q) = standard_pair(n);
    }
    auto v = bipoisson::is_poisson_pair(p, q);
    json r{{"chart", bipoisson::chart_to_json(p.chart())}, {"verdict", bipoisson::verdict_to_json(v)}};
    try {
        auto mu = bipoisson::pfaffian_polynomial(p, q);
        r["pfaffian_polynomial"] = mu.as_poly().to_string();
        r["chi_equals_mu_squared"] = bipoisson::chi_equals_mu_squared(p, q, mu);
    } catch (const MathError& e) {
        r["pfaffian_polynomial"] = nullptr;
        r["pfaffian_error"] = e.what();
    }
    return finish(out, g, "bipoisson-check", r, v.all());
}

int cmd_hilb(std::ostream& out, const Globals& g, const std::string& in, std::size_t n, const std::string& model_name) {
    hilbchart::SurfaceModel model;
    if (model_name == "plane") model = hilbchart::SurfaceModel::plane;
    else if (model_name == "cstar") model = hilbchart::SurfaceModel::cstar;
    else throw InputError("unknown surface model '" + model_name + "' (expected plane or cstar)");
    hilbchart::TransversePoint t;
    if (!in.empty()) {
        t = hilbchart::transverse_from_json(read_json_file(in));
    } else {
        Rng rng(g.seed.value_or(1));
        t = hilbchart::random_transverse_point(rng, n);
    }
    auto roots = hilbchart::coeffs_to_roots(t);
    auto pf = hilbchart::pushforward_bivectors_qp(t, model);
    auto mu = bipoisson::pfaffian_polynomial_at(pf.first, pf.second);
    CMatrix r = bipoisson::recursion_matrix(pf.first, pf.second);

    json table = json::array();
    double worst = 0;
    for (std::size_t i = 0; i < t.q.size(); ++i) {
        const Complex m = i < mu.size() ? mu[i] : Complex(NAN, NAN);
        worst = std::max(worst, std::abs(m - t.q[i]));
        table.push_back({{"power", t.q.size() - 1 - i},
                         {"q", from_complex(t.q[i])},
                         {"mu", from_complex(m)},
                         {"abs_diff", std::abs(m - t.q[i])}});
    }
    json ranks = json::array();
    bool ranks_ok = true;
    for (const auto& z : roots.roots) {
        auto k = bipoisson::degeneracy_rank(pf.first, pf.second, z);
        ranks.push_back(k);
        ranks_ok = ranks_ok && k == 2 * t.n() - 2;
    }
    const bool minimal = bipoisson::minimal_polynomial_check(r, t.q);
    const bool passed = worst <= 1e-8 && minimal && ranks_ok;
    if (g.format == "csv") {
        out << "power,q_re,q_im,mu_re,mu_im,abs_diff\n";
        for (const auto& row : table) {
            char line[256];
            std::snprintf(line, sizeof line, "%zu,%.12g,%.12g,%.12g,%.12g,%.3e\n", row["power"].get<std::size_t>(),
                          row["q"][0].get<double>(), row["q"][1].get<double>(), row["mu"][0].get<double>(),
                          row["mu"][1].get<double>(), row["abs_diff"].get<double>());
            out << line;
        }
        return passed ? 0 : kExitFail;
    }
    json rep{{"model", model_name},
             {"point", hilbchart::to_json(t)},
             {"roots", hilbchart::to_json(roots)},
             {"pfaffian_table", table},
             {"max_abs_diff", worst},
             {"minimal_polynomial", minimal},
             {"degeneracy_ranks", ranks}};
    return finish(out, g, "hilb-chart", rep, passed);
}

int cmd_quat(std::ostream& out, const Globals& g, const std::string& in, std::size_t n) {
    using namespace quatlin;
    Rng rng(g.seed.value_or(1));
    HermQuatTriple t = in.empty() ? random_triple(rng, n) : triple_from_json(read_json_file(in));
    auto pencil = pencil_build(t);
    auto curve = spectral_curve(pencil);
    auto grid = default_sample_grid(rng);
    std::vector<Complex> zetas;
    for (const auto& pt : grid) zetas.push_back(pt.first);
    const double doubling = doubling_check(pencil, curve, grid).max_relative_residual;
    const double cone = cone_intersection_check(t, grid).max_relative_residual;
    const double reality = curve.reality_defect(zetas);
    double moore = 0;
    for (const auto& a : t.a) {
        const double md = moore_det(a);
        const Complex det = quat_embed(a).determinant();
        moore = std::max(moore, std::abs(md * md - det) / std::max(1.0, std::abs(det)));
    }
    json rep{{"triple", triple_to_json(t)},
             {"curve", curve_to_json(curve)},
             {"degree_bounds", curve.degree_bounds_hold()},
             {"doubling_residual", doubling},
             {"cone_residual", cone},
             {"reality_defect", reality},
             {"moore_residual", moore}};
    if (g.format == "svg-bundle") {
        auto path = resolve_out_dir(g, "bihk-out") / "moore_surface.svg";
        write_text(path, svg::heatmap("Moore determinant slice x2 = x3 = 0",
                                                    moore_surface_grid(t, {0, 0, 0, 0}, 0, 1, -4, 4, 48), -4, 4,
                                                    -4, 4));
        rep["artifacts"] = {path.string()};
    }
    const bool passed = curve.degree_bounds_hold() && doubling <= 1e-8 && cone <= 1e-8 && reality <= 1e-8 &&
                        moore <= 1e-9;
    return finish(out, g, "quat-spectral", rep, passed);
}

int cmd_hk4(std::ostream& out, const Globals& g, const std::string& model_name, double mass, std::size_t points) {
    using namespace hk4;
    HarmonicSpec spec;
    if (model_name == "flat") spec = HarmonicSpec::flat();
    else if (model_name == "taubnut") spec = HarmonicSpec::taubnut(mass);
    else throw InputError("unknown model '" + model_name + "' (expected flat or taubnut)");
    auto m = HKModel4::gibbons_hawking(spec);
    Rng rng(g.seed.value_or(1));
    auto pts = random_points(rng, points);
    auto res = check_model(m, pts);
    auto v = check_hyper_poisson(m, HPTriple4::moment_maps(m), pts);
    auto vj = verdict_to_json(v);
    vj.erase("per_point");
    json rep{{"model", harmonic_to_json(spec)},
             {"points", points},
             {"model_residuals",
              {{"algebra", res.algebra},
               {"compatibility", res.compatibility},
               {"closedness", res.closedness},
               {"moment_map", res.moment_map}}},
             {"hyper_poisson", vj}};
    return finish(out, g, "hk4-verify", rep, v.passed && res.max() <= 1e-6);
}

void drift_plot_series(const nahm::DriftReport& r, std::vector<svg::Series>& series) {
    for (std::size_t z = 0; z < r.zetas.size(); ++z) {
        svg::Series s{"zeta " + std::to_string(z), r.times, {}};
        for (double v : r.series[z]) s.y.push_back(std::max(v, 1e-18));
        series.push_back(std::move(s));
    }
}

int cmd_nahm_run(std::ostream& out, const Globals& g, nahm::NahmRunSpec spec) {
    auto d = nahm::run_nahm(spec);
    auto dir = resolve_out_dir(g, "bihk-out");
    auto data_path = dir / ("nahm_k" + std::to_string(spec.charge) + ".json");
    write_text(data_path, nahm::nahm_to_json(d).dump() + "\n");

    auto drift = nahm::lax_isospectral(d, {0.0, Complex(0.5, 0.2), 1.0, Complex(-0.3, 1.1), Complex(0, -2)});
    const Complex casimir = nahm::casimir_coefficient(nahm::pole_series(spec.charge, 0, spec.order));
    const double expected = -spec.charge * (spec.charge * spec.charge - 1) / 4.0;
    auto dj = nahm::drift_to_json(drift);
    dj.erase("series");
    dj.erase("times");
    json rep{{"data", data_path.string()},
             {"k", d.k},
             {"grid_points", d.size()},
             {"step", d.step()},
             {"kappa", d.kappa},
             {"scale", d.scale},
             {"residual", nahm::residual(d)},
             {"anti_hermitian_defect", nahm::anti_hermitian_defect(d)},
             {"pole_match_defect", d.k > 1 ? nahm::pole_match_defect(d) : 0.0},
             {"drift", dj},
             {"casimir", {{"coefficient", casimir.real()}, {"expected", expected}}}};
    if (g.format == "svg-bundle") {
        std::vector<svg::Series> series;
        drift_plot_series(drift, series);
        write_text(dir / "nahm_drift.svg",
                        svg::line_plot("char L(zeta) coefficient drift", series, true));
        json files{(dir / "nahm_drift.svg").string()};
        if (d.k == 2) {
            std::vector<svg::Series> f{{"f1", {}, {}}, {"f2", {}, {}}, {"f3", {}, {}}};
            auto prof = nahm::euler_profiles(d);
            for (std::size_t i = 0; i < prof.size(); ++i)
                for (int a = 0; a < 3; ++a)
                    if (std::abs(prof[i][a]) < 50) {
                        f[a].x.push_back(d.grid[i]);
                        f[a].y.push_back(prof[i][a]);
                    }
            write_text(dir / "nahm_profiles.svg", svg::line_plot("Euler top profiles", f));
            files.push_back((dir / "nahm_profiles.svg").string());
        }
        rep["artifacts"] = files;
    }
    const bool passed = nahm::residual(d) <= 1e-6 && drift.max_drift <= 1e-6 && std::abs(casimir - expected) <= 1e-12;
    return finish(out, g, "nahm-run", rep, passed);
}

nahm::NahmData load_nahm(const std::string& in) {
    if (in.empty()) throw InputError("--in is required");
    return nahm::nahm_from_json(read_json_file(in));
}

int cmd_nahm_bivector(std::ostream& out, const Globals& g, const std::string& in, const std::string& pairs) {
    auto d = load_nahm(in);
    json rows = json::array();
    for (const auto& [a, b] : nahm::parse_pairs(pairs)) {
        auto u = nahm::named_tangent(d, a), v = nahm::named_tangent(d, b);
        auto split = nahm::hyper_poisson_split(d, u, v);
        auto om = nahm::kahler_forms_eval(d, u, v);
        rows.push_back({{"u", a},
                        {"v", b},
                        {"sigma", from_complex(nahm::hyper_poisson_2form(d, u, v))},
                        {"metric", from_complex(nahm::metric_eval(d, u, v))},
                        {"kahler", {from_complex(om[0]), from_complex(om[1]), from_complex(om[2])}},
                        {"split",
                         {{"part02", from_complex(split.part02)},
                          {"part11", from_complex(split.part11)},
                          {"part20", from_complex(split.part20)}}},
                        {"twozero",
                         {{"direct", from_complex(nahm::twozero_direct(d, u, v))},
                          {"key", from_complex(nahm::twozero_key(d, u, v))},
                          {"via_beta", from_complex(nahm::twozero_via_beta(d, u, v))}}}});
    }
    return finish(out, g, "nahm-bivector", json{{"k", d.k}, {"pairs", rows}}, true);
}

int cmd_nahm_potential(std::ostream& out, const Globals& g, const std::string& in) {
    auto d = load_nahm(in);
    auto c = nahm::contraction_check(d);
    json rep{{"k", d.k}, {"F", nahm::potential_F(d)}, {"contraction", nahm::contraction_to_json(c)}};
    return finish(out, g, "nahm-potential", rep, c.max_residual <= 1e-4);
}

int cmd_suite(std::ostream& out, const Globals& g, const std::string& name, std::optional<std::size_t> samples) {
    ExperimentConfig cfg;
    if (!g.config.empty()) cfg = config_from_json(read_json_file(g.config));
    if (!name.empty()) cfg.suite = name;
    if (cfg.suite.empty()) throw InputError("no suite given");
    if (g.seed) cfg.seed = *g.seed;
    if (g.format != "json" || g.config.empty()) cfg.format = parse_format(g.format);
    if (g.deterministic) cfg.deterministic = true;
    if (g.threads) cfg.threads = g.threads;
    if (samples) cfg.samples = *samples;
    cfg.out_dir = resolve_out_dir(g, cfg.out_dir);

    auto report = run_suite(cfg);
    for (const auto& c : report.checks) {
        char line[512];
        std::snprintf(line, sizeof line, "%s %-40s residual=%.3e tol=%.1e seed=%llu%s%s\n", c.passed ? "PASS" : "FAIL",
                      c.name.c_str(), c.residual, c.tolerance, static_cast<unsigned long long>(c.seed),
                      c.error.empty() ? "" : " error=", c.error.c_str());
        out << line;
    }
    for (const auto& p : emit_report(report, cfg.format, cfg.out_dir, cfg.deterministic)) out << "wrote " << p.string() << "\n";
    out << report.checks.size() - report.failures() << "/" << report.checks.size() << " checks passed\n";
    return report.all_passed() ? 0 : kExitFail;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bi-Poisson, quaternionic pencil and hyperkaehler verification toolkit", "bihk"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--config", g.config, "JSON experiment config (suite)");
    app.add_option("--seed", g.seed, "master seed");
    app.add_option("--out", g.out, "output directory (BIHK_OUT_DIR overrides)");
    app.add_option("--format", g.format, "json, csv or svg-bundle")
        ->check(CLI::IsMember({"json", "csv", "svg-bundle"}));
    app.add_flag("--deterministic", g.deterministic, "omit runtimes so identical runs give identical reports");
    app.add_option("--threads", g.threads, "worker threads for suites (0: all cores)");

    std::string in, pairs = "phase:x1,x2:x3", model = "plane", hk_model = "flat", suite_name;
    std::size_t n = 2, hilb_n = 3, quat_n = 3, points = 100;
    std::optional<std::size_t> samples;
    double mass = 1.0;
    nahm::NahmRunSpec spec;
    std::vector<double> center;

    auto* bp = app.add_subcommand("bipoisson-check", "Schouten brackets and Pfaffian polynomial of a bivector pair");
    bp->add_option("--in", in, "JSON {\"first\": bivector, \"second\": bivector}; default is the standard pair");
    bp->add_option("--n", n, "half dimension of the standard pair")->check(CLI::Range(1, 6));

    auto* hc = app.add_subcommand("hilb-chart", "coefficient chart of the transverse Hilbert scheme");
    hc->add_option("--in", in, "JSON {\"q\": [...], \"p\": [...]}; default is a random point");
    hc->add_option("--n", hilb_n, "number of points for a random input")->check(CLI::Range(1, 8));
    hc->add_option("--model", model, "plane or cstar");

    auto* qs = app.add_subcommand("quat-spectral", "spectral curve of a quaternion-Hermitian triple");
    qs->add_option("--in", in, "JSON triple {\"A1\": ..., \"A2\": ..., \"A3\": ...}; default is random");
    qs->add_option("--n", quat_n, "quaternionic size for a random triple")->check(CLI::Range(1, 8));

    auto* hk = app.add_subcommand("hk4-verify", "Gibbons-Hawking model and moment-map triple check");
    hk->add_option("--model", hk_model, "flat or taubnut");
    hk->add_option("--mass", mass, "Taub-NUT mass");
    hk->add_option("--points", points, "number of random sample points")->check(CLI::Range(1, 100000));

    auto* nr = app.add_subcommand("nahm-run", "solve the Nahm equations and persist the solution");
    nr->add_option("--charge", spec.charge, "monopole charge k (1 or 2)")->check(CLI::Range(1, 2));
    nr->add_option("--step", spec.step, "grid step")->check(CLI::PositiveNumber);
    nr->add_option("--delta", spec.delta, "pole cutoff")->check(CLI::Range(1e-3, 0.5));
    nr->add_option("--kappa", spec.kappa, "Euler-top modulus")->check(CLI::Range(0.0, 0.99));
    nr->add_option("--center", center, "centre x0 x1 x2 x3")->expected(4);

    auto* nb = app.add_subcommand("nahm-bivector", "hyper-Poisson form on named tangents");
    nb->add_option("--in", in, "solution file written by nahm-run")->required();
    nb->add_option("--pairs", pairs, "comma-separated pairs a:b with a, b in {phase, x1, x2, x3}");

    auto* np = app.add_subcommand("nahm-potential", "potential F and the contraction identity");
    np->add_option("--in", in, "solution file written by nahm-run")->required();

    auto* su = app.add_subcommand("suite", "run a named property suite");
    su->add_option("name", suite_name, "bipoisson-n2, hilb-n3, quat-spectral-n3, hk4, nahm-k2 or all");
    su->add_option("--samples", samples, "random samples per check")->check(CLI::Range(1, 10000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (center.size() == 4) std::copy(center.begin(), center.end(), spec.center.begin());
        if (*bp) return cmd_bipoisson(out, g, in, n);
        if (*hc) return cmd_hilb(out, g, in, hilb_n, model);
        if (*qs) return cmd_quat(out, g, in, quat_n);
        if (*hk) return cmd_hk4(out, g, hk_model, mass, points);
        if (*nr) return cmd_nahm_run(out, g, spec);
        if (*nb) return cmd_nahm_bivector(out, g, in, pairs);
        if (*np) return cmd_nahm_potential(out, g, in);
        return cmd_suite(out, g, suite_name, samples);
    } catch (const InputError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const json::exception& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

}  // namespace bihk::cli
