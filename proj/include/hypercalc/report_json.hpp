#pragma once

#include <string>

#include <json.hpp>

#include "hypercalc/admissibility.hpp"
#include "hypercalc/calculus.hpp"
#include "hypercalc/integral.hpp"
#include "hypercalc/series.hpp"
#include "hypercalc/ultrapower.hpp"

namespace hypercalc::report {

using Json = nlohmann::json;  // std::map-backed: keys come out sorted

inline constexpr const char* kSchema = "hypercalc/1";

Json to_json(const Classification& c);
Json to_json(const ExtendedValue& v);
Json to_json(const ConvergenceReport& r);
Json to_json(const FrechetVerdict& v);
Json to_json(const SeriesReport& r);
Json to_json(const IntegralResult& r);
Json to_json(const LimitValue& v);
Json to_json(const Scalar& s);
Json to_json(const AdmissibilityReport& r);

/// Compact, deterministic serialization; invalid UTF-8 is replaced.
std::string dump(const Json& j);

}  // namespace hypercalc::report
