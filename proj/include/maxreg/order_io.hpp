#pragma once

#include "maxreg/polygon.hpp"

#include <json.hpp>

#include <string>

namespace maxreg {

using json = nlohmann::json;

json to_json(const QPoint& p);
json to_json(const NewtonPolygon& p);
/// {"vertices": [["p/q","p/q"], ...], "elementary": [{"y": "p/q", "e": "p/q"}, ...]}
json to_json(const OrderFunction& mu);
json to_json(const OrderFunctionDiff& mu);

OrderFunction order_function_from_json(const json& j);
OrderFunctionDiff order_diff_from_json(const json& j);

/// Human form such as "2*o(1/2) + 3/2"; parse_order_expr reads it back.
std::string format_order(const OrderFunction& mu);
std::string format_order(const OrderFunctionDiff& mu);

/// Grammar: term (('+'|'-') term)*, term := [rational ['*']] 'o(' rational ')'
/// | rational | 'gamma' | name. Names: mu_D, mu_pm, o_1/2 style shorthands.
OrderFunctionDiff parse_order_expr(const std::string& text);

}  // namespace maxreg
