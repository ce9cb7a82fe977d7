#pragma once

#include <string>
#include <utility>

#include "json.hpp"

#include "bihk/nahm/forms.hpp"

namespace bihk::nahm {

// {"charge", "delta", "kappa", "scale", "center", "grid": [...],
//  "samples": [[T0, T1, T2, T3] per time], "tails": {"t0": series, "t2": series},
//  "certificate": {"residual", "anti_hermitian", "pole_match"}}
// Matrices are {"rows", "cols", "data": [re, im, ...]} in row-major order.
nlohmann::json nahm_to_json(const NahmData& d);
NahmData nahm_from_json(const nlohmann::json& j);

nlohmann::json drift_to_json(const DriftReport& r);
nlohmann::json contraction_to_json(const ContractionReport& r);

// Named constant tangents: "phase", "x1", "x2", "x3".
NahmTangent named_tangent(const NahmData& d, const std::string& name);
// "phase:x1,x2:x3" -> {("phase","x1"), ("x2","x3")}
std::vector<std::pair<std::string, std::string>> parse_pairs(const std::string& spec);

}  // namespace bihk::nahm
