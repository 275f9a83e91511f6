#pragma once

#include <string>

#include <json.hpp>

#include "hardy/weights.hpp"

namespace hardy {

using Json = nlohmann::ordered_json;

/// Reads a number, accepting the strings "inf" / "+inf" for +infinity.
double json_number(const Json& j, const std::string& path);
Json number_json(double x);

Interval interval_from_json(const Json& j, const std::string& path);

/// Parses the weight description at `path`; `dom` is used when the object
/// carries no "domain" of its own.
Weight weight_from_json(const Json& j, const Interval& dom,
                        const std::string& path);
Json weight_to_json(const Weight& w);

}  // namespace hardy
