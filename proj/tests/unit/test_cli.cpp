#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bihk/cli/commands.hpp"
#include "bihk/cli/suites.hpp"
#include "bihk/error.hpp"
#include "bihk/numeric.hpp"

using namespace bihk;
using namespace bihk::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("bihk_test_cli_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

struct Run {
    int code;
    std::string out, err;
};

Run invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "bihk");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

CheckSpec fixed(const std::string& name, double residual) {
    return {name, ojson{{"r", residual}}, 1e-6, [residual](std::uint64_t, double) {
                CheckOutcome o;
                o.residual = residual;
                return o;
            }};
}

}  // namespace

TEST_CASE("fnv1a digest") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
    CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("empty report gives a valid skeleton") {
    Report r{"none", 3, {}};
    auto j = nlohmann::json::parse(report_to_json(r).dump());
    CHECK(j["suite"] == "none");
    CHECK(j["checks"].empty());
    CHECK(j["summary"]["total"] == 0);
    CHECK(j["summary"]["all_passed"] == true);
    CHECK(report_to_csv(r) == "name,inputs_digest,residual,tolerance,passed,seed,runtime_ms\n");
}

TEST_CASE("run_checks: verdicts, seeds, errors and csv rows") {
    std::vector<CheckSpec> checks{fixed("ok", 1e-9), fixed("bad", 1e-3), fixed("ok2", 0)};
    checks.push_back({"throws", ojson::object(), 1.0, [](std::uint64_t, double) -> CheckOutcome {
                          throw MathError("boom");
                      }});
    auto r = run_checks("t", 42, checks, 3);
    REQUIRE(r.checks.size() == 4);
    CHECK(r.checks[0].passed);
    CHECK_FALSE(r.checks[1].passed);
    CHECK(r.checks[1].seed == derive_seed(42, 1));
    CHECK(r.checks[3].error == "boom");
    CHECK_FALSE(r.checks[3].passed);
    CHECK(r.failures() == 2);
    CHECK(r.checks[0].inputs_digest != r.checks[2].inputs_digest);

    r.checks.pop_back();
    auto csv = report_to_csv(r);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(csv.find("bad,") != std::string::npos);
}

TEST_CASE("config parsing and validation") {
    auto c = config_from_json(nlohmann::json::parse(
        R"({"suite": "hk4", "seed": 9, "samples": 3, "tolerances": {"hk4/twozero": 1e-9}, "format": "csv"})"));
    CHECK(c.suite == "hk4");
    CHECK(c.seed == 9);
    CHECK(c.format == Format::csv);
    CHECK_NOTHROW(validate_config(c));
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"suite": "hk4", "colour": 1})")), InputError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"seed": "x"})")), InputError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"format": "xml"})")), InputError);
    c.tolerances["hk4/twozero"] = -1;
    CHECK_THROWS_AS(validate_config(c), InputError);
    ExperimentConfig u;
    u.suite = "nope";
    CHECK_THROWS_AS(run_suite(u), InputError);
    CHECK_THROWS_AS(parse_format("pdf"), InputError);
}

TEST_CASE("suite bipoisson-n2 with seed 1 passes and is deterministic") {
    ExperimentConfig c;
    c.suite = "bipoisson-n2";
    c.seed = 1;
    auto r = run_suite(c);
    CHECK(r.checks.size() == 6);
    for (const auto& rec : r.checks) CHECK_MESSAGE(rec.passed, rec.name);
    c.threads = 1;
    auto again = run_suite(c);
    CHECK(report_to_json(r, true).dump() == report_to_json(again, true).dump());
}

TEST_CASE("suite quat-spectral-n3 with seed 7 passes") {
    ExperimentConfig c;
    c.suite = "quat-spectral-n3";
    c.seed = 7;
    auto r = run_suite(c);
    for (const auto& rec : r.checks) CHECK_MESSAGE(rec.passed, rec.name, " ", rec.residual);
    CHECK(r.all_passed());
}

TEST_CASE("suites hilb-n3 and hk4 pass") {
    for (std::string name : {"hilb-n3", "hk4"}) {
        ExperimentConfig c;
        c.suite = name;
        c.samples = 4;
        auto r = run_suite(c);
        for (const auto& rec : r.checks) CHECK_MESSAGE(rec.passed, rec.name, " ", rec.residual);
    }
}

TEST_CASE("emit_report writes the requested files") {
    std::vector<CheckSpec> checks{fixed("a", 0), fixed("b", 0), fixed("c", 0)};
    checks[0].run = [](std::uint64_t, double) {
        CheckOutcome o;
        o.artifacts.emplace_back("plot.svg", "<svg/>");
        return o;
    };
    auto r = run_checks("t", 1, checks);
    auto dir = scratch("emit");
    auto files = emit_report(r, Format::csv, dir);
    REQUIRE(files.size() == 1);
    CHECK(slurp(dir / "report.csv").find("a,") != std::string::npos);
    files = emit_report(r, Format::svg_bundle, dir);
    CHECK(files.size() == 3);
    CHECK(slurp(dir / "plot.svg") == "<svg/>");
    auto j = nlohmann::json::parse(slurp(dir / "report.json"));
    CHECK(j["checks"][0]["artifacts"][0] == "plot.svg");

    std::ofstream(dir / "file") << "x";
    try {
        emit_report(r, Format::json, dir / "file" / "sub");
        FAIL("expected an I/O error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("file") != std::string::npos);
    }
}

TEST_CASE("cli: suite runs, exit codes and output directory") {
    auto dir = scratch("suite");
    auto r = invoke({"suite", "bipoisson-n2", "--seed", "1", "--out", dir.string(), "--deterministic"});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS bipoisson-n2/poisson-pair") != std::string::npos);
    auto first = slurp(dir / "report.json");
    CHECK(invoke({"suite", "bipoisson-n2", "--seed", "1", "--out", dir.string(), "--deterministic"}).code == 0);
    CHECK(slurp(dir / "report.json") == first);
    CHECK(first.find("runtime_ms") == std::string::npos);

    CHECK(invoke({"suite", "nope"}).code == kExitUsage);
    CHECK(invoke({"bogus"}).code == kExitUsage);
    CHECK(invoke({"suite", "hk4", "--format", "xml"}).code == kExitUsage);

    auto cfg = dir / "cfg.json";
    std::ofstream(cfg) << R"({"suite": "quat-spectral-n3", "samples": 2, "tolerances": {"quat-spectral-n3/doubling": 1e-300}})";
    auto fail = invoke({"suite", "--config", cfg.string(), "--out", dir.string(), "--format", "csv"});
    CHECK(fail.code == kExitFail);
    CHECK(fail.out.find("FAIL quat-spectral-n3/doubling") != std::string::npos);
    CHECK(fs::exists(dir / "report.csv"));

    auto env_dir = scratch("env");
    setenv("BIHK_OUT_DIR", env_dir.string().c_str(), 1);
    CHECK(invoke({"suite", "bipoisson-n2", "--out", dir.string(), "--samples", "2"}).code == 0);
    unsetenv("BIHK_OUT_DIR");
    CHECK(fs::exists(env_dir / "report.json"));
}

TEST_CASE("cli: single-shot commands") {
    auto dir = scratch("single");
    auto b = invoke({"bipoisson-check", "--n", "2"});
    CHECK(b.code == 0);
    CHECK(nlohmann::json::parse(b.out)["passed"] == true);

    std::ofstream(dir.string() + "_pair.json") << R"({
      "first": {"chart": {"coords": ["z1","u1","z2","u2"]}, "entries": [{"row": 0, "col": 1, "poly": "z2"}, {"row": 2, "col": 3, "poly": "1"}]},
      "second": {"chart": {"coords": ["z1","u1","z2","u2"]}, "entries": [{"row": 0, "col": 1, "poly": "u2"}, {"row": 2, "col": 3, "poly": "z2"}]}})";
    auto nb = invoke({"bipoisson-check", "--in", dir.string() + "_pair.json"});
    CHECK(nb.code == kExitFail);
    CHECK(invoke({"bipoisson-check", "--in", "/nonexistent.json"}).code == kExitUsage);

    auto h = invoke({"hilb-chart", "--n", "3", "--seed", "4", "--format", "csv"});
    CHECK(h.code == 0);
    CHECK(std::count(h.out.begin(), h.out.end(), '\n') == 5);
    auto hj = invoke({"hilb-chart", "--n", "2", "--model", "cstar"});
    CHECK(hj.code == 0);
    CHECK(nlohmann::json::parse(hj.out)["pfaffian_table"].size() == 3);

    auto q = invoke({"quat-spectral", "--n", "2", "--format", "svg-bundle", "--out", dir.string()});
    CHECK(q.code == 0);
    CHECK(fs::exists(dir / "moore_surface.svg"));
    CHECK(fs::exists(dir / "quat-spectral.json"));

    CHECK(invoke({"hk4-verify", "--model", "taubnut", "--points", "20"}).code == 0);
    CHECK(invoke({"hk4-verify", "--model", "eguchi"}).code == kExitUsage);
    CHECK(invoke({"hk4-verify", "--model", "taubnut", "--mass", "-1"}).code != 0);
}

TEST_CASE("cli: nahm pipeline through files") {
    auto dir = scratch("nahm");
    auto run = invoke({"nahm-run", "--charge", "1", "--center", "0", "0.4", "0.3", "-0.2", "--out", dir.string()});
    CHECK(run.code == 0);
    auto data = (dir / "nahm_k1.json").string();
    REQUIRE(fs::exists(data));
    auto bv = invoke({"nahm-bivector", "--in", data, "--pairs", "phase:x1,x2:x3"});
    CHECK(bv.code == 0);
    auto j = nlohmann::json::parse(bv.out);
    REQUIRE(j["pairs"].size() == 2);
    // k = 1: sigma(x2, x3) = -x1
    CHECK(j["pairs"][1]["sigma"][0].get<double>() == doctest::Approx(-0.4).epsilon(1e-10));
    auto pot = invoke({"nahm-potential", "--in", data});
    CHECK(pot.code == 0);
    CHECK(nlohmann::json::parse(pot.out)["contraction"]["max_residual"].get<double>() < 1e-10);
    CHECK(invoke({"nahm-bivector", "--in", data, "--pairs", "phase"}).code == kExitUsage);
    CHECK(invoke({"nahm-run", "--charge", "3"}).code == kExitUsage);
}

TEST_CASE("nahm suite emits JSON and a drift SVG") {
    auto dir = scratch("nahm_suite");
    auto r = invoke({"suite", "nahm-k2", "--format", "svg-bundle", "--out", dir.string()});
    CHECK_MESSAGE(r.code == 0, r.out);
    CHECK(fs::exists(dir / "report.json"));
    CHECK(fs::exists(dir / "nahm_drift.svg"));
    CHECK(slurp(dir / "nahm_drift.svg").rfind("<svg", 0) == 0);
}
