// Serialization of measurement and probe reports.
//
// Every report shares one stable JSON schema: `method`, `n`, `estimate`,
// `excluded`, `witness`, plus `success` and `parameters` for probes.
// Key order is fixed, every number is checked finite before emission, and
// doubles print through a shortest-round-trip formatter, so identical runs
// serialize byte-identically.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cbc_chaos/lyapunov.hpp"
#include "cbc_chaos/probes.hpp"

namespace cbc_chaos {

using Json = nlohmann::ordered_json;

std::string method_name(LyapunovMethod m);

// Shortest text that parses back to exactly the same double.
std::string format_double(double v);

// Throws std::domain_error on NaN or infinity; reports must stay finite.
double require_finite(double v);

Json to_json(const LyapunovReport& r);
Json to_json(const CommuteReport& r);
Json to_json(const SensitivityReport& r);
Json to_json(const TransitivityReport& r);
Json to_json(const RegularityReport& r);

// CSV with header `index,term`, one row per recorded step.
std::string terms_csv(const std::vector<double>& terms);

}  // namespace cbc_chaos
