#pragma once

#include "json.hpp"

#include "bihk/bipoisson/recursion.hpp"

namespace bihk::bipoisson {

// {"coords": ["z1","u1",...]}
nlohmann::json chart_to_json(const Chart& c);
Chart chart_from_json(const nlohmann::json& j);

// {"chart": {...}, "entries": [{"row": 0, "col": 1, "poly": "z1"}, ...]}; only row<col is written.
nlohmann::json bivector_to_json(const PolyBivector& b);
PolyBivector bivector_from_json(const nlohmann::json& j);

nlohmann::json verdict_to_json(const PoissonVerdict& v);

}  // namespace bihk::bipoisson
