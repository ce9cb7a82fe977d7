#include "bihk/cli/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bihk/error.hpp"

namespace bihk::cli {

namespace {

std::string number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", x);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << text;
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

std::size_t Report::failures() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.passed ? 0 : 1;
    return n;
}

Format parse_format(const std::string& s) {
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    if (s == "svg-bundle") return Format::svg_bundle;
    throw InputError("unknown format '" + s + "' (expected json, csv or svg-bundle)");
}

std::string format_name(Format f) {
    switch (f) {
        case Format::json: return "json";
        case Format::csv: return "csv";
        case Format::svg_bundle: return "svg-bundle";
    }
    return "json";
}

std::string fnv1a_hex(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ojson report_to_json(const Report& r, bool deterministic) {
    ojson checks = ojson::array();
    for (const auto& c : r.checks) {
        ojson j;
        j["name"] = c.name;
        j["inputs_digest"] = c.inputs_digest;
        j["residual"] = c.residual;
        j["tolerance"] = c.tolerance;
        j["passed"] = c.passed;
        j["seed"] = c.seed;
        if (!deterministic) j["runtime_ms"] = c.runtime_ms;
        if (!c.error.empty()) j["error"] = c.error;
        j["details"] = c.details;
        ojson files = ojson::array();
        for (const auto& a : c.artifacts) files.push_back(a.first);
        j["artifacts"] = files;
        checks.push_back(std::move(j));
    }
    ojson out;
    out["suite"] = r.suite;
    out["seed"] = r.seed;
    out["checks"] = checks;
    ojson summary;
    summary["total"] = r.checks.size();
    summary["passed"] = r.checks.size() - r.failures();
    summary["failed"] = r.failures();
    summary["all_passed"] = r.all_passed();
    out["summary"] = summary;
    return out;
}

std::string report_to_csv(const Report& r, bool deterministic) {
    std::ostringstream s;
    s << "name,inputs_digest,residual,tolerance,passed,seed,runtime_ms\n";
    for (const auto& c : r.checks)
        s << csv_field(c.name) << ',' << c.inputs_digest << ',' << number(c.residual) << ',' << number(c.tolerance)
          << ',' << (c.passed ? "true" : "false") << ',' << c.seed << ','
          << (deterministic ? std::string("0") : number(c.runtime_ms)) << '\n';
    return s.str();
}

std::vector<std::filesystem::path> emit_report(const Report& r, Format f, const std::filesystem::path& dir,
                                               bool deterministic) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
    std::vector<std::filesystem::path> written;
    auto put = [&](const std::string& name, const std::string& text) {
        auto p = dir / name;
        write_text(p, text);
        written.push_back(p);
    };
    if (f != Format::csv) put("report.json", report_to_json(r, deterministic).dump(2) + "\n");
    if (f != Format::json) put("report.csv", report_to_csv(r, deterministic));
    if (f != Format::csv)
        for (const auto& c : r.checks)
            for (const auto& a : c.artifacts) put(a.first, a.second);
    return written;
}

}  // namespace bihk::cli
