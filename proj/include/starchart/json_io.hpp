#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "starchart/certify.hpp"
#include "starchart/layering.hpp"
#include "starchart/prechart.hpp"
#include "starchart/rerouting.hpp"
#include "starchart/solution.hpp"

namespace starchart {

using Json = nlohmann::ordered_json;

Json chart_to_json(const Prechart& x);
/// Accepts the chart format; ignores per-transition "tag"/"weight" fields.
Prechart chart_from_json(const Json& j);

Json witness_to_json(const LabelledPrechart& l);
/// Every transition must carry "tag": "e" or "b".
LabelledPrechart witness_from_json(const Json& j);
/// Tags from `j` applied to an already known chart; the transition sets must agree.
LabelledPrechart witness_from_json(const Json& j, const Prechart& base);

Json weighted_to_json(const WeightedLabelling& w);
WeightedLabelling weighted_from_json(const Json& j);

Json solution_to_json(const Solution& s, bool simplified = false);
Json relation_to_json(const Prechart& x, const Prechart& y, const Relation& r);
Json partition_to_json(const Prechart& x, const Partition& p);
Json violation_to_json(const Prechart& x, const Prechart& y, const BisimViolation& v);
Json collapse_to_json(const Prechart& input, const Collapse& c);

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

/// Reads a JSON document from a file ("-" for stdin); InputError on failure.
Json read_json_file(const std::string& path);

}  // namespace starchart
