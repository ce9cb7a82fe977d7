#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bihk/bipoisson/bivector.hpp"
#include "bihk/cli/report.hpp"

namespace bihk::cli {

struct ExperimentConfig {
    std::string suite;
    std::uint64_t seed = 1;
    std::size_t n = 0;  // 0 selects the suite default
    int k = 2;
    std::size_t samples = 10;
    std::map<std::string, double> tolerances;  // per-check overrides keyed by check name
    std::filesystem::path out_dir = "bihk-out";
    Format format = Format::json;
    bool deterministic = false;
    std::size_t threads = 0;  // 0: hardware concurrency
};

// {"suite": "...", "seed": 1, "n": 2, "k": 2, "samples": 10, "tolerances": {...},
//  "out": "dir", "format": "json", "deterministic": false, "threads": 0}
// Unknown keys and wrong types are InputError.
ExperimentConfig config_from_json(const nlohmann::json& j);
void validate_config(const ExperimentConfig& c);
const std::vector<std::string>& suite_names();

struct CheckOutcome {
    double residual = 0;
    std::optional<bool> verdict;  // unset: residual <= tolerance decides
    ojson details = ojson::object();
    std::vector<std::pair<std::string, std::string>> artifacts;
};

struct CheckSpec {
    std::string name;
    ojson inputs;
    double tolerance = 0;
    std::function<CheckOutcome(std::uint64_t seed, double tolerance)> run;
};

// Pi_1 = sum d/dz_i ^ d/du_i, Pi_2 = sum z_i d/dz_i ^ d/du_i on the Darboux chart of dimension 2n.
std::pair<bipoisson::PolyBivector, bipoisson::PolyBivector> standard_pair(std::size_t n);

std::vector<CheckSpec> suite_checks(const ExperimentConfig& c);

// Each check gets derive_seed(seed, index) and runs on a worker thread; records keep the input order.
Report run_checks(const std::string& suite, std::uint64_t seed, const std::vector<CheckSpec>& checks,
                  std::size_t threads = 0);
Report run_suite(const ExperimentConfig& c);

}  // namespace bihk::cli
