#include "profit/io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace profit::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw input_error(what); }

const json& need(const json& j, const char* key, const char* ctx) {
    const auto it = j.find(key);
    if (it == j.end()) fail(std::string(ctx) + ": missing field \"" + key + "\"");
    return *it;
}

double need_number(const json& j, const char* key, const char* ctx) {
    const json& v = need(j, key, ctx);
    if (!v.is_number()) fail(std::string(ctx) + ": field \"" + key + "\" must be a number");
    return v.get<double>();
}

std::string kind_of(const json& j, const char* ctx) {
    if (!j.is_object()) fail(std::string(ctx) + ": expected a JSON object");
    const json& k = need(j, "kind", ctx);
    if (!k.is_string()) fail(std::string(ctx) + ": \"kind\" must be a string");
    return k.get<std::string>();
}

// [lo, hi] with extended-real entries.
std::pair<double, double> parse_range(const json& j, const char* key, const char* ctx) {
    const json& v = need(j, key, ctx);
    if (!v.is_array() || v.size() != 2)
        fail(std::string(ctx) + ": field \"" + key + "\" must be a two-element array");
    return {parse_extended(v[0]), parse_extended(v[1])};
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

double parse_extended(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_null()) return inf;
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "+inf" || s == "inf") return inf;
        if (s == "-inf") return -inf;
        fail("extended real: expected a number, \"+inf\" or \"-inf\", got \"" + s + "\"");
    }
    fail("extended real: expected a number or an infinity string");
}

ojson extended_to_json(double v) {
    if (std::isinf(v)) return v > 0 ? ojson("+inf") : ojson("-inf");
    return ojson(v);
}

// ---------------------------------------------------------------------------
// Cash flows.

namespace {

CashFlow parse_cashflow_json(const json& j) {
    if (!j.is_object()) fail("cash flow: expected a JSON object");
    const json& txs = need(j, "transactions", "cash flow");
    if (!txs.is_array()) fail("cash flow: \"transactions\" must be an array");
    std::vector<Transaction> out;
    out.reserve(txs.size());
    for (const json& e : txs) {
        if (!e.is_object()) fail("cash flow: each transaction must be an object");
        out.push_back({need_number(e, "t", "transaction"), need_number(e, "amount", "transaction")});
    }
    return CashFlow(std::move(out));
}

CashFlow parse_cashflow_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<Transaction> out;
    int lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        if (!header_seen) {
            std::string h = line;
            std::erase_if(h, [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
            if (h != "t,amount")
                fail("CSV cash flow: line 1 must be the header \"t,amount\"");
            header_seen = true;
            continue;
        }
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            fail("CSV cash flow: line " + std::to_string(lineno) + ": expected \"t,amount\"");
        try {
            std::size_t used = 0;
            const std::string ts = line.substr(start, comma - start);
            const std::string as = line.substr(comma + 1);
            const double t = std::stod(ts, &used);
            if (used != ts.size() && ts.find_first_not_of(" \t", used) != std::string::npos)
                throw std::invalid_argument(ts);
            const double a = std::stod(as, &used);
            if (used != as.size() && as.find_first_not_of(" \t", used) != std::string::npos)
                throw std::invalid_argument(as);
            out.push_back({t, a});
        } catch (const std::exception&) {
            fail("CSV cash flow: line " + std::to_string(lineno) + ": malformed number");
        }
    }
    if (!header_seen) fail("CSV cash flow: empty input");
    return CashFlow(std::move(out));
}

}  // namespace

CashFlow parse_cashflow_text(const std::string& text) {
    const std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) fail("cash flow: empty input");
    if (text[first] == '{' || text[first] == '[') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error& e) {
            fail(std::string("cash flow: JSON parse error: ") + e.what());
        }
        return parse_cashflow_json(j);
    }
    return parse_cashflow_csv(text);
}

CashFlow load_cashflow(const std::string& path) { return parse_cashflow_text(read_file(path)); }

ojson cashflow_to_json(const CashFlow& x) {
    ojson txs = ojson::array();
    for (const auto& tx : x.transactions()) txs.push_back({{"t", tx.time}, {"amount", tx.amount}});
    return ojson{{"transactions", std::move(txs)}};
}

// ---------------------------------------------------------------------------
// Discount functions.

Discount parse_discount(const json& j) {
    const std::string kind = kind_of(j, "discount");
    if (kind == "exponential") return Discount::exponential(need_number(j, "rate", "exponential"));
    if (kind == "compound_annual")
        return Discount::compound_annual(need_number(j, "rate", "compound_annual"));
    if (kind == "constant_sensitivity")
        return Discount::constant_sensitivity(need_number(j, "rate", "constant_sensitivity"),
                                              need_number(j, "beta", "constant_sensitivity"));
    if (kind == "generalized_hyperbolic")
        return Discount::generalized_hyperbolic(need_number(j, "rate", "generalized_hyperbolic"),
                                                need_number(j, "beta", "generalized_hyperbolic"));
    if (kind == "power_of_base")
        return Discount::power_of_base(parse_discount(need(j, "base", "power_of_base")),
                                       need_number(j, "exponent", "power_of_base"));
    if (kind == "unit") return Discount::unit();
    if (kind == "impatient" || kind == "chi") return Discount::impatient();
    if (kind == "truncated") {
        const json& cl = need(j, "closed", "truncated");
        if (!cl.is_boolean()) fail("truncated: \"closed\" must be a boolean");
        return Discount::truncated(parse_discount(need(j, "inner", "truncated")),
                                   need_number(j, "horizon", "truncated"), cl.get<bool>());
    }
    if (kind == "chi_mix")
        return Discount::chi_mix(parse_discount(need(j, "inner", "chi_mix")),
                                 need_number(j, "gamma", "chi_mix"));
    if (kind == "intensity")
        return Discount::intensity(parse_discount(need(j, "inner", "intensity")),
                                   need_number(j, "factor", "intensity"));
    if (kind == "grid") {
        const json& ts = need(j, "times", "grid");
        const json& vs = need(j, "values", "grid");
        if (!ts.is_array() || !vs.is_array()) fail("grid: \"times\"/\"values\" must be arrays");
        std::vector<double> times, values;
        for (const json& e : ts) times.push_back(parse_extended(e));
        for (const json& e : vs) values.push_back(parse_extended(e));
        return Discount::grid_sampled(std::move(times), std::move(values));
    }
    fail("discount: unknown kind \"" + kind + "\"");
}

ojson discount_to_json(const Discount& d) {
    using namespace dsc;
    return std::visit(
        [](const auto& n) -> ojson {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Exponential>)
                return {{"kind", "exponential"}, {"rate", n.rate}};
            else if constexpr (std::is_same_v<T, CompoundAnnual>)
                return {{"kind", "compound_annual"}, {"rate", n.rate}};
            else if constexpr (std::is_same_v<T, ConstantSensitivity>)
                return {{"kind", "constant_sensitivity"}, {"rate", n.rate}, {"beta", n.beta}};
            else if constexpr (std::is_same_v<T, GeneralizedHyperbolic>)
                return {{"kind", "generalized_hyperbolic"}, {"rate", n.rate}, {"beta", n.beta}};
            else if constexpr (std::is_same_v<T, PowerOfBase>)
                return {{"kind", "power_of_base"},
                        {"base", discount_to_json(*n.base)},
                        {"exponent", n.exponent}};
            else if constexpr (std::is_same_v<T, Unit>)
                return {{"kind", "unit"}};
            else if constexpr (std::is_same_v<T, Impatient>)
                return {{"kind", "impatient"}};
            else if constexpr (std::is_same_v<T, Truncated>)
                return {{"kind", "truncated"},
                        {"inner", discount_to_json(*n.inner)},
                        {"horizon", n.horizon},
                        {"closed", n.closed}};
            else if constexpr (std::is_same_v<T, ChiMix>)
                return {{"kind", "chi_mix"}, {"inner", discount_to_json(*n.inner)},
                        {"gamma", n.gamma}};
            else if constexpr (std::is_same_v<T, Intensity>)
                return {{"kind", "intensity"}, {"inner", discount_to_json(*n.inner)},
                        {"factor", n.factor}};
            else
                return {{"kind", "grid"}, {"times", n.times}, {"values", n.values}};
        },
        d.node());
}

// ---------------------------------------------------------------------------
// Discount families.

DFamily parse_dfamily(const json& j) {
    const std::string kind = kind_of(j, "discount family");
    if (kind == "exponential_family") return DFamily::exponential();
    if (kind == "constant_sensitivity_family")
        return DFamily::constant_sensitivity(need_number(j, "beta", "constant_sensitivity_family"));
    if (kind == "hyperbolic_family")
        return DFamily::generalized_hyperbolic(need_number(j, "beta", "hyperbolic_family"));
    if (kind == "power_family")
        return DFamily::power(parse_discount(need(j, "base", "power_family")));
    fail("discount family: unknown kind \"" + kind + "\"");
}

ojson dfamily_to_json(const DFamily& f) {
    switch (f.kind()) {
        case DFamily::Kind::Exponential:
            return {{"kind", "exponential_family"}};
        case DFamily::Kind::ConstantSensitivity:
            return {{"kind", "constant_sensitivity_family"}, {"beta", f.beta()}};
        case DFamily::Kind::GeneralizedHyperbolic:
            return {{"kind", "hyperbolic_family"}, {"beta", f.beta()}};
        case DFamily::Kind::Power:
            return {{"kind", "power_family"}, {"base", discount_to_json(*f.power_base())}};
    }
    fail("discount family: unknown kind");
}

// ---------------------------------------------------------------------------
// Scenario sets.

ScenarioSet parse_scenario(const json& j) {
    const std::string kind = kind_of(j, "scenario");
    if (kind == "finite") {
        const json& ms = need(j, "members", "finite scenario");
        if (!ms.is_array()) fail("finite scenario: \"members\" must be an array");
        std::vector<Npv> members;
        for (const json& m : ms) members.emplace_back(parse_discount(m));
        return ScenarioSet::finite(std::move(members));
    }
    if (kind == "d_family_range") {
        const auto [lo, hi] = parse_range(j, "lambda", "d_family_range");
        return ScenarioSet::d_family_range(parse_dfamily(need(j, "family", "d_family_range")), lo,
                                           hi);
    }
    if (kind == "truncation") {
        const auto [lo, hi] = parse_range(j, "tau", "truncation scenario");
        bool untrunc = false;
        if (const auto it = j.find("include_untruncated"); it != j.end()) {
            if (!it->is_boolean()) fail("truncation scenario: \"include_untruncated\" must be a boolean");
            untrunc = it->get<bool>();
        }
        return ScenarioSet::truncation_family(parse_discount(need(j, "alpha", "truncation scenario")),
                                              lo, hi, untrunc);
    }
    if (kind == "reduction") {
        const auto [lo, hi] = parse_range(j, "gamma", "reduction scenario");
        return ScenarioSet::reduction_family(parse_discount(need(j, "alpha", "reduction scenario")),
                                             lo, hi);
    }
    if (kind == "intensity") {
        const auto [lo, hi] = parse_range(j, "lambda", "intensity scenario");
        return ScenarioSet::intensity_family(parse_discount(need(j, "alpha", "intensity scenario")),
                                             lo, hi);
    }
    if (kind == "product" || kind == "union") {
        const char* field = kind == "product" ? "components" : "parts";
        const json& cs = need(j, field, "scenario");
        if (!cs.is_array()) fail(std::string("scenario: \"") + field + "\" must be an array");
        std::vector<ScenarioSet> children;
        for (const json& c : cs) children.push_back(parse_scenario(c));
        return kind == "product" ? ScenarioSet::product(std::move(children))
                                 : ScenarioSet::union_of(std::move(children));
    }
    fail("scenario: unknown kind \"" + kind + "\"");
}

ojson scenario_to_json(const ScenarioSet& s) {
    const ScenarioNode& n = s.node();
    using Kind = ScenarioSet::Kind;
    switch (n.kind) {
        case Kind::Finite: {
            ojson ms = ojson::array();
            for (const Npv& m : n.members) ms.push_back(discount_to_json(m.alpha));
            return {{"kind", "finite"}, {"members", std::move(ms)}};
        }
        case Kind::DFamilyRange:
            return {{"kind", "d_family_range"},
                    {"family", dfamily_to_json(*n.family)},
                    {"lambda", ojson::array({extended_to_json(n.lo), extended_to_json(n.hi)})}};
        case Kind::TruncationFamily:
            return {{"kind", "truncation"},
                    {"alpha", discount_to_json(*n.alpha)},
                    {"tau", ojson::array({extended_to_json(n.lo), extended_to_json(n.hi)})},
                    {"include_untruncated", n.include_untruncated}};
        case Kind::ReductionFamily:
            return {{"kind", "reduction"},
                    {"alpha", discount_to_json(*n.alpha)},
                    {"gamma", ojson::array({extended_to_json(n.lo), extended_to_json(n.hi)})}};
        case Kind::IntensityFamily:
            return {{"kind", "intensity"},
                    {"alpha", discount_to_json(*n.alpha)},
                    {"lambda", ojson::array({extended_to_json(n.lo), extended_to_json(n.hi)})}};
        case Kind::Product:
        case Kind::Union: {
            ojson cs = ojson::array();
            for (const ScenarioSet& c : n.children) cs.push_back(scenario_to_json(c));
            if (n.kind == Kind::Product) return {{"kind", "product"}, {"components", std::move(cs)}};
            return {{"kind", "union"}, {"parts", std::move(cs)}};
        }
    }
    fail("scenario: unknown kind");
}

}  // namespace profit::io
