#pragma once

// JSON reports shared by the kronstab commands.

#include <string>

#include <json.hpp>

#include "kronstab/census.hpp"
#include "kronstab/degeneracy.hpp"
#include "kronstab/git_stability.hpp"
#include "kronstab/homology.hpp"

namespace kronstab::cli {

using Json = nlohmann::ordered_json;

Json witness_json(const Witness& w);
Json verdict_json(const StabilityVerdict& v);
Json degeneracy_json(const DegeneracyReport& r);
Json filtration_json(const FiltrationReport& r);
Json hoppe_json(const HoppeProfile& h);
Json mu_json(const MuStabilityReport& r);
Json ext_json(const ExtDimensions& e, const Dimensions& d);
Json census_summary_json(const CensusSummary& s);

/// Indented "key: value" rendering for terminals.
std::string render_text(const Json& j, int indent = 0);

}  // namespace kronstab::cli
