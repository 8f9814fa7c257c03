// profit: command-line front end. Subcommands delegate to the library; all
// results (including Incomparable/Undetermined) are successful outputs.
// Exit codes: 0 success, 1 input/parse errors, 2 domain errors (a metric
// evaluated outside its natural domain).

#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "profit/indices.hpp"
#include "profit/io.hpp"
#include "profit/irr.hpp"
#include "profit/ordering.hpp"
#include "profit/payback.hpp"
#include "profit/valuation.hpp"

namespace {

using profit::io::ojson;

// Inline JSON (starts with '{' or '[') or a file path.
profit::io::json load_json_arg(const std::string& arg, const char* what) {
    std::string text = arg;
    const std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        throw profit::input_error(std::string(what) + ": empty argument");
    if (text[first] != '{' && text[first] != '[') text = profit::io::read_file(arg);
    try {
        return profit::io::json::parse(text);
    } catch (const profit::io::json::parse_error& e) {
        throw profit::input_error(std::string(what) + ": JSON parse error: " + e.what());
    }
}

profit::Discount load_alpha(const std::string& arg) {
    return profit::io::parse_discount(load_json_arg(arg, "discount"));
}

// Accepts a bare family name ("exponential_family") as a shorthand for
// {"kind":"exponential_family"}.
profit::DFamily load_family(const std::string& arg) {
    const std::size_t first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && arg[first] != '{' &&
        arg.find_first_of("/.\\") == std::string::npos) {
        profit::io::json j;
        j["kind"] = arg;
        return profit::io::parse_dfamily(j);
    }
    return profit::io::parse_dfamily(load_json_arg(arg, "discount family"));
}

ojson relation_json(const profit::ComparabilityResult& r) {
    std::string rel;
    switch (r.relation) {
        case profit::Relation::GreaterEq: rel = r.strict ? "greater_strict" : "greater_eq"; break;
        case profit::Relation::LessEq: rel = r.strict ? "less_strict" : "less_eq"; break;
        case profit::Relation::Equivalent: rel = "equivalent"; break;
        case profit::Relation::Incomparable: rel = "incomparable"; break;
        case profit::Relation::Undetermined: rel = "undetermined"; break;
    }
    ojson out;
    out["relation"] = rel;
    out["strict"] = r.strict;
    out["witness_x_only"] = r.witness_x_only ? ojson(*r.witness_x_only) : ojson(nullptr);
    out["witness_y_only"] = r.witness_y_only ? ojson(*r.witness_y_only) : ojson(nullptr);
    return out;
}

ojson interval_list(const profit::IntervalSet& s) {
    ojson arr = ojson::array();
    for (const auto& iv : s.intervals())
        arr.push_back(ojson::array(
            {profit::io::extended_to_json(iv.lo), profit::io::extended_to_json(iv.hi)}));
    return arr;
}

const char* dpp_class_name(profit::DppDomainClass c) {
    switch (c) {
        case profit::DppDomainClass::QMinus: return "q_minus";
        case profit::DppDomainClass::QPossesses: return "possesses";
        case profit::DppDomainClass::QPlus: return "q_plus";
        default: return "outside";
    }
}

void flatten(const ojson& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
    } else if (j.is_string()) {
        rows.emplace_back(prefix, j.get<std::string>());
    } else {
        rows.emplace_back(prefix, j.dump());
    }
}

void emit(const ojson& out, const std::string& format) {
    if (format == "json") {
        std::cout << out.dump(2) << "\n";
        return;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(out, "", rows);
    std::size_t width = 0;
    for (const auto& [k, v] : rows) width = std::max(width, k.size());
    for (const auto& [k, v] : rows)
        std::cout << k << std::string(width - k.size() + 2, ' ') << v << "\n";
}

ojson opt_to_json(const std::optional<double>& v) {
    return v ? ojson(*v) : ojson(nullptr);
}

// The irr payload shared by `irr` and `report`.
ojson irr_block(const profit::DFamily& fam, const profit::CashFlow& x, double tol,
                bool extended) {
    profit::IrrOptions io;
    io.tol = tol;
    const profit::AcceptanceSet acc = profit::acceptance_set(fam, x, io);
    ojson out;
    out["family"] = fam.describe();
    out["irr"] = opt_to_json(profit::possesses_irr(fam, x, io));
    out["natural_domain"] = profit::in_natural_domain(fam, x, io);
    out["regular"] = profit::to_string(profit::is_regular(fam, x, io));
    out["acceptance"] = interval_list(acc.set);
    if (acc.undetermined) out["boundary"] = true;
    if (extended)
        out["rr_extended"] = profit::io::extended_to_json(profit::natural_extension_rr(fam, x, io));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"profit: project profitability metrics and scenario orderings"};
    app.require_subcommand(1);

    std::string input, alpha_arg = R"({"kind":"unit"})", family_arg = "exponential_family";
    std::string g_arg, scenario_arg, format = "json";
    std::vector<std::string> inputs;
    double tol = profit::default_tol;
    int grid = 65;
    bool extended = false, refined = false, star = false, do_classify = false;
    bool sign_mode = false, hull = false;

    const auto add_common = [&](CLI::App* sub, bool needs_input) {
        if (needs_input)
            sub->add_option("--input", input, "cash-flow file (JSON or CSV)")->required();
        sub->add_option("--tol", tol, "tolerance (default 1e-9)");
        sub->add_option("--format", format, "output format: table or json")
            ->check(CLI::IsMember({"table", "json"}));
        return sub;
    };

    CLI::App* c_npv = add_common(app.add_subcommand("npv", "net present value"), true);
    c_npv->add_option("--alpha", alpha_arg, "discount function (JSON or file)");

    CLI::App* c_irr = add_common(app.add_subcommand("irr", "rate of return analysis"), true);
    c_irr->add_option("--family", family_arg, "discount family (name, JSON, or file)");
    c_irr->add_flag("--extended", extended, "include the natural extension of RR");

    add_common(app.add_subcommand("pp", "payback period"), true);

    CLI::App* c_dpp = add_common(app.add_subcommand("dpp", "discounted payback period"), true);
    c_dpp->add_option("--alpha", alpha_arg, "discount function (JSON or file)");
    c_dpp->add_flag("--refined", refined, "include the refined (tau, lambda) pair");
    c_dpp->add_flag("--star", star, "include the interpolated DPP* (integer times)");
    c_dpp->add_flag("--classify", do_classify, "include natural-domain class and extension");

    CLI::App* c_pi = add_common(app.add_subcommand("pi", "profitability index"), true);
    c_pi->add_option("--alpha", alpha_arg, "discount function (JSON or file)");
    c_pi->add_flag("--extended", extended, "include the natural extension");

    CLI::App* c_ri = add_common(app.add_subcommand("ri", "ratio index"), true);
    c_ri->add_option("--alpha", alpha_arg, "numerator functional F (JSON or file)")->required();
    c_ri->add_option("--g", g_arg, "denominator functional G (JSON or file)")->required();
    c_ri->add_flag("--extended", extended, "include the natural extension");

    add_common(app.add_subcommand("classify", "project class membership"), true);

    CLI::App* c_cmp = app.add_subcommand("compare", "scenario-set comparison");
    c_cmp->add_option("--inputs", inputs, "two cash-flow files")->expected(2)->required();
    c_cmp->add_option("--scenario", scenario_arg, "scenario set (JSON or file)")->required();
    c_cmp->add_option("--tol", tol, "tolerance (default 1e-9)");
    c_cmp->add_option("--format", format, "output format: table or json")
        ->check(CLI::IsMember({"table", "json"}));
    c_cmp->add_option("--grid", grid, "sampling density for parametric scans");
    c_cmp->add_flag("--sign", sign_mode, "use the sign preorder");
    c_cmp->add_flag("--hull", hull, "include the convex-hull test (finite sets)");

    add_common(app.add_subcommand("usury", "usury classification"), true);

    CLI::App* c_rep = add_common(app.add_subcommand("report", "all metrics for one flow"), true);
    c_rep->add_option("--alpha", alpha_arg, "discount function (JSON or file)");
    c_rep->add_option("--family", family_arg, "discount family (name, JSON, or file)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!(tol > 0.0) || !std::isfinite(tol))
            throw profit::input_error("tolerance must be positive and finite");
        ojson out;

        if (c_npv->parsed()) {
            const profit::CashFlow x = profit::io::load_cashflow(input);
            const profit::Discount alpha = load_alpha(alpha_arg);
            out["alpha"] = alpha.describe();
            out["npv"] = profit::npv(alpha, x);
        } else if (c_irr->parsed()) {
            out = irr_block(load_family(family_arg), profit::io::load_cashflow(input), tol,
                            extended);
        } else if (app.get_subcommand("pp")->parsed()) {
            const profit::CashFlow x = profit::io::load_cashflow(input);
            bool boundary = false;
            out["pp"] = opt_to_json(profit::pp(x, tol, &boundary));
            out["boundary"] = boundary;
        } else if (c_dpp->parsed()) {
            const profit::CashFlow x = profit::io::load_cashflow(input);
            const profit::Discount alpha = load_alpha(alpha_arg);
            bool boundary = false;
            out["alpha"] = alpha.describe();
            out["dpp"] = opt_to_json(profit::dpp(alpha, x, tol, &boundary));
            out["boundary"] = boundary;
            if (refined) {
                if (const auto r = profit::refined_dpp(alpha, x, tol))
                    out["refined"] = ojson{{"tau", r->tau}, {"lambda", r->lambda}};
                else
                    out["refined"] = nullptr;
            }
            if (star) out["dpp_star"] = opt_to_json(profit::dpp_star(alpha, x, tol));
            if (do_classify) {
                const profit::DppDomainClass c = profit::classify_dpp_domain(alpha, x, tol);
                out["class"] = dpp_class_name(c);
                out["rdpp_extended"] =
                    c == profit::DppDomainClass::Outside
                        ? ojson(nullptr)
                        : profit::io::extended_to_json(profit::rdpp_natural_extension(alpha, x, tol));
            }
        } else if (c_pi->parsed()) {
            const profit::CashFlow x = profit::io::load_cashflow(input);
            const profit::Discount alpha = load_alpha(alpha_arg);
            out["alpha"] = alpha.describe();
            out["pi"] = opt_to_json(profit::pi(alpha, x));
            if (extended)
                out["pi_extended"] = profit::io::extended_to_json(profit::ri_natural_extension(
                    alpha, profit::Discount::impatient(), x, profit::default_index_grid(x)));
        } else if (c_ri->parsed()) {
            const profit::CashFlow x = profit::io::load_cashflow(input);
            const profit::Discount f = load_alpha(alpha_arg);
            const profit::Discount g = load_alpha(g_arg);
            out["f"] = f.describe();
            out["g"] = g.describe();
            out["ri"] = opt_to_json(profit::ri(f, g, x));
            if (extended) {
                const profit::TildeBounds tb =
                    profit::tilde_bounds(f, g, profit::default_index_grid(x));
                out["w_bounds"] = ojson::array({tb.w_inf_clamped, tb.w_sup_clamped});
                out["ri_extended"] = profit::io::extended_to_json(
                    profit::ri_natural_extension(f, g, x, profit::default_index_grid(x)));
            }
        } else if (app.get_subcommand("classify")->parsed()) {
            const profit::CashFlow x = profit::io::load_cashflow(input);
            const profit::QMembership q = profit::classify(x);
            out["q1"] = q.q1;
            out["q2"] = q.q2;
            out["q3"] = q.q3;
            out["q4"] = q.q4;
            out["q5"] = q.q5;
            out["q1_prime"] = q.q1_prime;
            out["q2_prime"] = q.q2_prime;
            out["q2_double_prime"] = q.q2_double_prime;
            out["q4_prime"] = q.q4_prime;
            out["q5_prime"] = q.q5_prime;
            out["q5_double_prime"] = q.q5_double_prime;
            out["s"] = q.s;
            out["in_p_plus"] = x.in_P_plus();
            out["in_p_plusplus"] = x.in_P_plusplus();
        } else if (c_cmp->parsed()) {
            const profit::CashFlow x = profit::io::load_cashflow(inputs[0]);
            const profit::CashFlow y = profit::io::load_cashflow(inputs[1]);
            const profit::ScenarioSet s =
                profit::io::parse_scenario(load_json_arg(scenario_arg, "scenario"));
            profit::CompareOptions co;
            co.tol = tol;
            co.axis_samples = grid;
            out["scenario"] = s.describe();
            out["mode"] = sign_mode ? "sign" : "accept";
            const profit::ComparabilityResult r =
                sign_mode ? profit::sign_compare(s, x, y, co) : profit::compare(s, x, y, co);
            out.update(relation_json(r));
            if (hull) {
                out["hull_x_geq_y"] = profit::compare_convex_hull_finite(s, x, y);
                out["hull_y_geq_x"] = profit::compare_convex_hull_finite(s, y, x);
            }
        } else if (app.get_subcommand("usury")->parsed()) {
            out["classification"] =
                profit::to_string(profit::usury_classify(profit::io::load_cashflow(input)));
        } else if (c_rep->parsed()) {
            const profit::CashFlow x = profit::io::load_cashflow(input);
            const profit::Discount alpha = load_alpha(alpha_arg);
            const profit::DFamily fam = load_family(family_arg);

            out["flow"] = profit::io::cashflow_to_json(x);
            out["npv"] = ojson{{"alpha", alpha.describe()}, {"value", profit::npv(alpha, x)}};

            const profit::QMembership q = profit::classify(x);
            out["classes"] = ojson{{"q1", q.q1},       {"q2", q.q2}, {"q3", q.q3},
                                   {"q4", q.q4},       {"q5", q.q5}, {"s", q.s},
                                   {"in_p_plus", x.in_P_plus()}};

            ojson irr_part = irr_block(fam, x, tol, false);
            try {
                profit::IrrOptions rio;
                rio.tol = tol;
                irr_part["rr_extended"] =
                    profit::io::extended_to_json(profit::natural_extension_rr(fam, x, rio));
                irr_part["rr_in_domain"] = true;
            } catch (const profit::domain_error&) {
                irr_part["rr_extended"] = nullptr;
                irr_part["rr_in_domain"] = false;
            }
            out["irr"] = std::move(irr_part);

            bool boundary = false;
            out["pp"] = opt_to_json(profit::pp(x, tol, &boundary));
            ojson dp;
            dp["value"] = opt_to_json(profit::dpp(alpha, x, tol, &boundary));
            if (const auto r = profit::refined_dpp(alpha, x, tol))
                dp["refined"] = ojson{{"tau", r->tau}, {"lambda", r->lambda}};
            else
                dp["refined"] = nullptr;
            try {
                dp["star"] = opt_to_json(profit::dpp_star(alpha, x, tol));
            } catch (const profit::input_error&) {
                dp["star"] = nullptr;  // non-integer transaction times
            }
            try {
                const profit::DppDomainClass c = profit::classify_dpp_domain(alpha, x, tol);
                dp["class"] = dpp_class_name(c);
                dp["rdpp_extended"] = c == profit::DppDomainClass::Outside
                                          ? ojson(nullptr)
                                          : profit::io::extended_to_json(
                                                profit::rdpp_natural_extension(alpha, x, tol));
                dp["rdpp_in_domain"] = c != profit::DppDomainClass::Outside;
            } catch (const profit::input_error&) {
                dp["class"] = nullptr;  // alpha = chi
                dp["rdpp_extended"] = nullptr;
                dp["rdpp_in_domain"] = false;
            }
            out["dpp"] = std::move(dp);

            ojson pix;
            pix["value"] = opt_to_json(profit::pi(alpha, x));
            try {
                pix["extended"] = profit::io::extended_to_json(profit::ri_natural_extension(
                    alpha, profit::Discount::impatient(), x, profit::default_index_grid(x)));
                pix["ri_in_domain"] = true;
            } catch (const profit::domain_error&) {
                pix["extended"] = nullptr;
                pix["ri_in_domain"] = false;
            } catch (const profit::input_error&) {
                pix["extended"] = nullptr;  // alpha = chi: F and G coincide
                pix["ri_in_domain"] = false;
            }
            out["pi"] = std::move(pix);

            out["usury"] = profit::to_string(profit::usury_classify(x));
            if (const auto h = profit::hajdasinski_recovery_time(alpha, x))
                out["hajdasinski_recovery"] = *h;
            else
                out["hajdasinski_recovery"] = nullptr;
        }

        emit(out, format);
        return 0;
    } catch (const profit::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const profit::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
