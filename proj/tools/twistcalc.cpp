// twistcalc: star products, golden tables and verification suites for the twisted quadrics.

#include "twistcalc/expr.hpp"
#include "twistcalc/geometry.hpp"
#include "twistcalc/quadrics.hpp"
#include "twistcalc/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

using namespace twistcalc;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string family;
    std::vector<std::string> exprs;
    std::string twist;
    std::vector<std::string> params;
    std::string format = "text";
    int max_degree = -1;
};

std::map<std::string, Rational> parse_params(const std::vector<std::string>& items) {
    std::map<std::string, Rational> out;
    for (auto& kv : items) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("--param expects k=v, got '" + kv + "'");
        try {
            out[kv.substr(0, eq)] = parse_rational(kv.substr(eq + 1));
        } catch (const std::exception&) {
            throw UsageError("--param " + kv + ": value is not a rational number");
        }
    }
    return out;
}

std::vector<std::string> twists_for(const QuadricFamily& fam, const std::string& name) {
    if (name.empty()) return fam.twist_ids();
    try {
        return {resolve_twist_id(fam, name)};
    } catch (const std::exception& ex) {
        throw UsageError(ex.what());
    }
}

QuadricFamily family_for(const Options& o) {
    if (o.family.empty()) throw UsageError("missing family id");
    try {
        return build_family(o.family, parse_params(o.params));
    } catch (const CatalogError& ex) {
        throw UsageError(ex.what());
    }
}

void emit_element(const QuadricFamily& fam, const std::string& twist_id, const std::string& input, const Element& e,
                  Format f) {
    switch (f) {
        case Format::Text: std::cout << e.str(fam.names) << "\n"; break;
        case Format::Latex: std::cout << e.latex(fam.names) << "\n"; break;
        case Format::Json: {
            nlohmann::ordered_json j;
            j["schema"] = "twistcalc-element/1";
            j["family"] = fam.id;
            j["twist"] = twist_id;
            j["input"] = input;
            j["result"] = e.str(fam.names);
            j["terms"] = nlohmann::ordered_json::array();
            for (auto& [w, c] : e.terms()) j["terms"].push_back(Element::word(e.dim(), w, c).str(fam.names));
            std::cout << j.dump(1) << "\n";
            break;
        }
    }
}

int emit_report(const Report& r, Format f) {
    std::cout << render(r, f);
    return r.exit_code();
}

int cmd_star(const Options& o, bool commutator) {
    auto fam = family_for(o);
    auto tids = twists_for(fam, o.twist);
    if (tids.size() != 1) throw UsageError("family " + fam.id + " has several twists; choose one with --twist");
    Twist T = build_twist(fam, tids[0]);
    FamilyContext ctx(fam, &T);
    Element out(fam.n);
    std::string input;
    if (commutator) {
        if (o.exprs.size() != 2) throw UsageError("comm expects two expressions");
        out = star_commutator(T, evaluate(o.exprs[0], ctx), evaluate(o.exprs[1], ctx));
        input = "comm(" + o.exprs[0] + ", " + o.exprs[1] + ")";
    } else if (o.exprs.size() == 1) {
        out = evaluate(o.exprs[0], ctx);
        input = o.exprs[0];
    } else if (o.exprs.size() == 2) {
        out = star(T, evaluate(o.exprs[0], ctx), evaluate(o.exprs[1], ctx));
        input = "star(" + o.exprs[0] + ", " + o.exprs[1] + ")";
    } else {
        throw UsageError("star expects one expression or two factors");
    }
    emit_element(fam, tids[0], input, out, parse_format(o.format));
    return 0;
}

int cmd_table(const Options& o) {
    auto fam = family_for(o);
    Report rep("golden tables of family " + fam.id);
    for (auto& tid : twists_for(fam, o.twist)) {
        rep.append(verify_family_tables(fam, tid, false));
        rep.append(quotient_relations_check(fam, tid));
    }
    return emit_report(rep, parse_format(o.format));
}

int cmd_hilbert(const Options& o) {
    auto fam = family_for(o);
    int q = o.max_degree < 0 ? 4 : o.max_degree;
    Report rep("Hilbert ranks of family " + fam.id);
    for (auto& tid : twists_for(fam, o.twist)) rep.append(hilbert_dims_check(fam, build_twist(fam, tid), q));
    return emit_report(rep, parse_format(o.format));
}

std::optional<Report> geometry_for(const std::string& id, const std::map<std::string, Rational>& params) {
    if (id != "c" && id != "f" && id != "g" && id != "fgh") return std::nullopt;
    return geometry_report(id, params);
}

int cmd_geometry(const Options& o) {
    if (o.family.empty()) throw UsageError("missing family id");
    auto params = parse_params(o.params);
    try {
        return emit_report(geometry_report(o.family, params), parse_format(o.format));
    } catch (const GeometryError& ex) {
        throw UsageError(ex.what());
    }
}

int cmd_verify(const Options& o) {
    if (o.family.empty()) throw UsageError("missing family id or 'all'");
    std::vector<std::string> ids;
    if (o.family == "all")
        ids = {"a", "b", "c", "d", "e", "f", "g", "h"};
    else
        ids = {o.family};
    int q = o.max_degree < 0 ? 4 : o.max_degree;
    Report rep(o.family == "all" ? "verification of all families" : "verification of family " + o.family);
    for (auto& id : ids) {
        Options one = o;
        one.family = id;
        auto fam = family_for(one);
        rep.append(self_checks(fam));
        for (auto& tid : twists_for(fam, o.twist)) rep.append(verify_twist(fam, tid, q));
        // geometry runs on the circular members and only when no other parameters were chosen
        if (o.params.empty())
            if (auto g = geometry_for(id, {})) rep.append(*g);
    }
    return emit_report(rep, parse_format(o.format));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"star products and verification suites for twisted quadric surfaces", "twistcalc"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub, bool exprs) {
        sub->add_option("family", o.family, "family id: a b c d e f g h fgh (verify also takes 'all')");
        if (exprs) sub->add_option("exprs", o.exprs, "expressions");
        sub->add_option("--twist", o.twist, "twist kind: abelian, jordanian, dilation, killing, or a full twist id");
        sub->add_option("--param", o.params, "parameter bindings k=v")->expected(1, -1);
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json", "latex"}));
        sub->add_option("--max-degree", o.max_degree, "degree bound for Hilbert ranks and verification")
            ->check(CLI::Range(0, 12));
    };
    auto* star_cmd = app.add_subcommand("star", "evaluate an expression or the star product of two factors");
    auto* comm_cmd = app.add_subcommand("comm", "star commutator of two expressions");
    auto* table_cmd = app.add_subcommand("table", "golden tables with computed columns");
    auto* verify_cmd = app.add_subcommand("verify", "run every check for a family or for all");
    auto* geometry_cmd = app.add_subcommand("geometry", "metric, connection and curvature suites");
    auto* hilbert_cmd = app.add_subcommand("hilbert", "ranks of star monomials against classical dimensions");
    common(star_cmd, true);
    common(comm_cmd, true);
    for (auto* s : {table_cmd, verify_cmd, geometry_cmd, hilbert_cmd}) common(s, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*star_cmd) return cmd_star(o, false);
        if (*comm_cmd) return cmd_star(o, true);
        if (*table_cmd) return cmd_table(o);
        if (*verify_cmd) return cmd_verify(o);
        if (*geometry_cmd) return cmd_geometry(o);
        if (*hilbert_cmd) return cmd_hilbert(o);
    } catch (const UsageError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const SyntaxError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const EvalError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const SeriesCapExceeded& ex) {
        std::cerr << "error: " << ex.what() << " (raise TWISTCALC_SAFETY_CAP)\n";
        return kExitMismatch;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
