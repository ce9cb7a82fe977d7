#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace bihk::cli {

using ojson = nlohmann::ordered_json;

struct CheckRecord {
    std::string name;
    std::string inputs_digest;
    double residual = 0;
    double tolerance = 0;
    bool passed = false;
    std::uint64_t seed = 0;
    double runtime_ms = 0;
    std::string error;  // exception text when the check threw
    ojson details = ojson::object();
    // (file name, SVG text) written next to the report
    std::vector<std::pair<std::string, std::string>> artifacts;
};

struct Report {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<CheckRecord> checks;

    std::size_t failures() const;
    bool all_passed() const { return failures() == 0; }
};

enum class Format { json, csv, svg_bundle };
Format parse_format(const std::string& s);
std::string format_name(Format f);

// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

// Runtimes are dropped when deterministic is set so identical runs give identical bytes.
ojson report_to_json(const Report& r, bool deterministic = false);
// Header: name,inputs_digest,residual,tolerance,passed,seed,runtime_ms
std::string report_to_csv(const Report& r, bool deterministic = false);

// json: report.json plus artifacts; csv: report.csv; svg-bundle: both plus artifacts.
// Returns the written paths. Throws std::runtime_error naming the path on I/O failure.
std::vector<std::filesystem::path> emit_report(const Report& r, Format f, const std::filesystem::path& dir,
                                               bool deterministic = false);

}  // namespace bihk::cli
