#pragma once
// Serialization: cash flows (JSON or CSV), discount functions, discount
// families and scenario sets to and from JSON. Extended reals appear as
// plain numbers or the strings "+inf"/"-inf" (null is accepted for +inf on
// input). Output uses insertion-ordered JSON so identical inputs produce
// byte-identical reports.

#include <string>

#include <json.hpp>

#include "profit/cashflow.hpp"
#include "profit/dfamily.hpp"
#include "profit/discount.hpp"
#include "profit/ordering.hpp"

namespace profit::io {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

// Whole file; throws input_error when unreadable.
std::string read_file(const std::string& path);

// {"transactions":[{"t":0,"amount":-1},...]} or CSV with header "t,amount".
// The format is detected from the first non-space character.
CashFlow parse_cashflow_text(const std::string& text);
CashFlow load_cashflow(const std::string& path);
ojson cashflow_to_json(const CashFlow& x);

// {"kind":"exponential","rate":0.1}, {"kind":"truncated","horizon":5,
// "closed":true,"inner":{...}}, {"kind":"chi_mix","gamma":0.5,"inner":{...}},
// {"kind":"grid","times":[...],"values":[...]}, ...
Discount parse_discount(const json& j);
ojson discount_to_json(const Discount& d);

// {"kind":"exponential_family"}, {"kind":"constant_sensitivity_family",
// "beta":2}, {"kind":"hyperbolic_family","beta":1}, {"kind":"power_family",
// "base":{...}}.
DFamily parse_dfamily(const json& j);
ojson dfamily_to_json(const DFamily& f);

// {"kind":"finite","members":[{discount...},...]},
// {"kind":"d_family_range","family":{...},"lambda":[0,10]},
// {"kind":"truncation","alpha":{...},"tau":[5,null],"include_untruncated":true},
// {"kind":"reduction","alpha":{...},"gamma":[0,1]},
// {"kind":"intensity","alpha":{...},"lambda":[0.5,2]},
// {"kind":"product","components":[...]}, {"kind":"union","parts":[...]}.
ScenarioSet parse_scenario(const json& j);
ojson scenario_to_json(const ScenarioSet& s);

double parse_extended(const json& j);
ojson extended_to_json(double v);

}  // namespace profit::io
