#include "wittkit/cli.hpp"

#include "wittkit/error.hpp"
#include "wittkit/graded.hpp"
#include "wittkit/parse.hpp"
#include "wittkit/pseudomonoid.hpp"
#include "wittkit/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <ostream>

namespace wittkit {

namespace {

using Json = nlohmann::ordered_json;

struct Settings {
    std::string format = "text";
    long prec = kDefaultPrecision;
    std::string window = "-8:8";
    long degree_bound = 16;
    std::uint64_t seed = 0;
};

// A command result: the JSON record, plus a text rendering when the generic
// key: value layout does not fit.
struct Output {
    Json json;
    std::string text;
    int status = 0;
};

Json scalars(const std::vector<Scalar>& v) {
    Json a = Json::array();
    for (const auto& s : v) a.push_back(to_string(s));
    return a;
}

Json pair_json(const GradePair& p) { return Json::array({to_string(p.first), to_string(p.second)}); }

std::string inline_text(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_null()) return "none";
    if (j.is_array()) {
        std::string s = "[";
        for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + inline_text(j[i]);
        return s + "]";
    }
    if (j.is_object()) {
        std::string s = "{";
        bool first = true;
        for (const auto& [k, v] : j.items()) {
            s += (first ? "" : ", ") + k + ": " + inline_text(v);
            first = false;
        }
        return s + "}";
    }
    return j.dump();
}

std::string key_value_text(const Json& j) {
    std::string s;
    for (const auto& [k, v] : j.items()) s += k + ": " + inline_text(v) + "\n";
    return s;
}

std::string capitalized(std::string_view s) {
    std::string out(s);
    if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    return out;
}

Json verdict_json(const Verdict& v) {
    Json j;
    j["verdict"] = capitalized(verdict_name(v.kind));
    if (v.ideal) j["witness"] = scalars(*v.ideal);
    if (v.scalar) j["witness"] = to_string(*v.scalar);
    if (!v.reason.empty()) j["reason"] = v.reason;
    j["complete"] = v.complete;
    return j;
}

Scalar scalar_arg(const std::string& text, const char* what) {
    auto s = parse_scalar(text);
    if (!s) raise(Errc::InvalidArgument, std::string("invalid ") + what + " '" + text + "'");
    return *s;
}

// "lo..hi" with integer ends, or a comma-separated list of rationals.
std::vector<Scalar> parse_candidates(const std::string& text) {
    std::vector<Scalar> out;
    if (auto dots = text.find(".."); dots != std::string::npos) {
        auto lo = parse_scalar(text.substr(0, dots)), hi = parse_scalar(text.substr(dots + 2));
        if (!lo || !hi || !is_integer(*lo) || !is_integer(*hi) || *lo > *hi)
            raise(Errc::InvalidArgument, "invalid candidate range '" + text + "'");
        if (*hi - *lo > 100000) raise(Errc::InvalidArgument, "candidate range too long");
        for (Scalar k = *lo; k <= *hi; k += 1) out.push_back(k);
        return out;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        if (comma == std::string::npos) comma = text.size();
        out.push_back(scalar_arg(text.substr(start, comma - start), "candidate"));
        start = comma + 1;
    }
    return out;
}

std::string degree_text(const DegreeVerdict& d) {
    switch (d.kind) {
        case DegreeVerdict::Kind::Known: return std::to_string(d.value);
        case DegreeVerdict::Kind::AtLeast: return ">= " + std::to_string(d.value);
        case DegreeVerdict::Kind::Infinite: break;
    }
    return "infinity";
}

Output series_eval(const Settings& s, const std::string& expr, const std::string& op) {
    const LaurentSeries f = parse_series(expr, s.prec);
    Json j;
    j["input"] = to_string(f);
    j["op"] = op;
    if (op == "value") {
        j["result"] = to_string(f);
    } else if (op == "inverse") {
        j["result"] = to_string(inverse(f, s.prec));
    } else if (op == "derivative") {
        j["result"] = to_string(derivative(f));
    } else if (op == "integrate") {
        j["result"] = to_string(integrate(f));
    } else if (op == "exp-integral") {
        j["result"] = to_string(exp_integral(f, s.prec));
    } else if (op == "log-derivative") {
        j["result"] = to_string(log_derivative(f, s.prec));
    } else if (op == "degree") {
        j["result"] = degree_text(weierstrass_degree(f));
    } else if (op == "residue") {
        j["result"] = to_string(residue(f));
    } else {  // ld-preimage
        Json r;
        const auto pre = ld_preimage(f, s.prec);
        if (const auto* a = std::get_if<LdCaseA>(&pre)) {
            r["case"] = "a";
            r["witness"] = to_string(a->witness);
        } else if (const auto* b = std::get_if<LdCaseB>(&pre)) {
            r["case"] = "b";
            r["residue"] = b->residue;
            r["witness"] = to_string(b->witness);
        } else {
            r["case"] = "none";
            r["reason"] = std::get<LdNoPreimage>(pre).reason == NoPreimageReason::DegreeTooLow ? "DegreeTooLow"
                                                                                              : "NonIntegerResidue";
        }
        j["result"] = r;
    }
    return {j, {}};
}

Output weyl_normalize(const Settings& s, const std::string& expr) {
    const WeylElement a = parse_expression(expr, s.prec).as_weyl();
    const OrderValue ord = order(a);
    Json j;
    j["result"] = to_string(a);
    j["order"] = ord.negative_infinity ? Json("-infinity") : Json(ord.value);
    return {j, {}};
}

Output witt_bracket_cmd(const Settings& s, const std::string& a, const std::string& b) {
    const auto x = parse_witt(a, s.prec), y = parse_witt(b, s.prec);
    Json j;
    j["result"] = to_string(witt_bracket(x, y));
    return {j, {}};
}

Output witt_eig(const Settings& s, const std::string& f_text, const std::string& a_text) {
    const auto f = parse_series(f_text, s.prec);
    const Scalar a = scalar_arg(a_text, "eigenvalue");
    Json j;
    j["eigenvalue"] = to_string(a);
    j["eigenvector"] = to_string(eigenvector_candidate(f, a, s.prec));
    return {j, {}};
}

Output witt_spec(const Settings& s, const std::string& f_text, const std::string& alg_text, const std::string& cands) {
    const auto f = parse_series(f_text, s.prec);
    const auto alg = parse_algebra(alg_text);
    if (!alg) raise(Errc::InvalidArgument, "unknown algebra '" + alg_text + "'");
    const auto rows = spectrum_in_algebra(f, *alg, parse_candidates(cands), s.degree_bound, s.prec);
    Output o;
    o.json = Json::array();
    for (const auto& row : rows) {
        Json r;
        r["eigenvalue"] = to_string(row.eigenvalue);
        std::string verdict_text;
        if (const auto* m = std::get_if<MembershipVerdict>(&row.outcome)) {
            verdict_text = to_string(*m);
            switch (m->kind) {
                case MembershipVerdict::Kind::No:
                    r["verdict"] = "No";
                    r["witnessExponent"] = m->witness_exponent;
                    break;
                case MembershipVerdict::Kind::YesWithinBounds:
                    r["verdict"] = "YesWithinBounds";
                    r["degreeBound"] = m->degree_bound;
                    r["prec"] = m->prec;
                    break;
                case MembershipVerdict::Kind::YesExact: r["verdict"] = "YesExact"; break;
            }
        } else {
            const auto code = errc_name(std::get<Errc>(row.outcome));
            verdict_text = "No(" + std::string(code) + ")";
            r["verdict"] = "No";
            r["reason"] = code;
        }
        o.text += to_string(row.eigenvalue) + "\t" + verdict_text + "\n";
        o.json.push_back(r);
    }
    return o;
}

Output pm_ideals(const Settings& s, const std::string& pm) {
    const auto g = parse_pseudomonoid(pm);
    const Window w = parse_window(s.window);
    const auto ideals = enumerate_ideal_subsets(g, w);
    Output o;
    o.json["pm"] = to_string(g);
    o.json["window"] = Json::array({to_string(w.lo), to_string(w.hi)});
    o.json["count"] = ideals.size();
    o.json["ideals"] = Json::array();
    o.text = "count: " + std::to_string(ideals.size()) + "\n";
    for (const auto& i : ideals) {
        Json r;
        r["elements"] = scalars(i.elements);
        r["extendable"] = i.extendable;
        o.text += inline_text(r["elements"]) + (i.extendable ? " extendable" : "") + "\n";
        o.json["ideals"].push_back(r);
    }
    return o;
}

Output graded_spec(const Settings& s, const std::string& alpha_text, const std::string& pm,
                   const std::optional<std::string>& kernel_at) {
    const auto alpha = parse_graded(alpha_text);
    const auto g = parse_pseudomonoid(pm);
    const Window w = parse_window(s.window);
    Json j;
    j["alpha"] = to_string(alpha);
    if (kernel_at) {
        const Scalar a = scalar_arg(*kernel_at, "eigenvalue");
        j["eigenvalue"] = to_string(a);
        Json k = Json::array();
        for (const auto& v : eigen_kernel(alpha, a, g, w)) k.push_back(to_string(v));
        j["kernel"] = k;
        return {j, {}};
    }
    const auto sw = spectrum_window(alpha, g, w);
    j["eigenvalues"] = scalars(sw.eigenvalues);
    j["boundaryLost"] = scalars(sw.boundary_lost);
    Json ov = Json::array();
    for (const auto& p : sw.overflow) ov.push_back(pair_json(p));
    j["overflow"] = ov;
    return {j, {}};
}

Output graded_endo(const Settings& s, const std::string& spec, const std::string& pm) {
    const auto e = parse_endo(spec);
    const auto g = parse_pseudomonoid(pm);
    const auto r = endo_verify(e, g, parse_window(s.window));
    Json j;
    j["spec"] = to_string(e);
    j["pass"] = r.pass;
    if (r.counterexample) j["counterexample"] = pair_json(*r.counterexample);
    j["pairsChecked"] = r.pairs_checked;
    j["imageGrades"] = scalars(r.image_grades);
    j["injectiveOnWindow"] = r.injective_on_window;
    j["ontoWindow"] = r.onto_window;
    j["missed"] = scalars(r.missed);
    return {j, {}};
}

Output verify_cmd(const Settings& s, const std::vector<std::string>& only) {
    const auto report = run_verify(s.seed, only);
    Output o;
    o.json["seed"] = report.seed;
    o.json["pass"] = report.all_passed();
    o.json["suites"] = Json::array();
    std::size_t passed = 0;
    for (const auto& suite : report.suites) {
        Json r;
        r["name"] = suite.name;
        r["pass"] = suite.passed();
        r["cases"] = suite.cases;
        r["failures"] = suite.failures;
        if (!suite.first_failure.empty()) r["firstFailure"] = suite.first_failure;
        o.json["suites"].push_back(r);
        passed += suite.passed();
    }
    o.text = to_text(report) + "summary: " + std::to_string(passed) + "/" + std::to_string(report.suites.size()) +
             " suites passed\n";
    o.status = report.all_passed() ? 0 : 1;
    return o;
}

// CLI11 reads "--window -6:6" as two options; glue such values to their flag.
std::vector<std::string> glue_negative_values(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const auto& a = args[i];
        if (a.rfind("--", 0) == 0 && a.size() > 2 && a.find('=') == std::string::npos && i + 1 < args.size()) {
            const auto& next = args[i + 1];
            if (next.size() > 1 && next[0] == '-' && next[1] != '-' && next != "-h") {
                out.push_back(a + "=" + next);
                ++i;
                continue;
            }
        }
        out.push_back(a);
    }
    return out;
}

bool is_usage_error(Errc c) { return c == Errc::ParseError || c == Errc::InvalidArgument; }

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    Settings s;
    CLI::App app{"Exact series, Witt algebra and pseudomonoid computations", "wittkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", s.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    auto* prec_opt = app.add_option("--prec", s.prec, "working precision in terms (default 32, env WITTKIT_PREC)");
    app.add_option("--window", s.window, "grade window lo:hi")->capture_default_str();
    app.add_option("--degree-bound", s.degree_bound, "degree bound for membership semi-decisions")
        ->capture_default_str();
    app.add_option("--seed", s.seed, "seed for verify")->capture_default_str();

    std::function<Output()> action;
    auto leaf = [&](CLI::App* parent, const char* name, const char* help, std::function<Output()> fn) {
        auto* sub = parent->add_subcommand(name, help);
        sub->callback([&action, fn] { action = fn; });
        return sub;
    };

    std::string expr, op = "value", a_text, b_text, f_text, eig_text, alg = "poly", cands = "-3..6";
    std::string pm = "Z", other, alpha_text, endo_text;
    std::optional<std::string> kernel_at;
    long search_bound = 8;
    std::vector<std::string> suites;

    auto* series = app.add_subcommand("series", "Laurent series arithmetic")->require_subcommand(1);
    auto* eval = leaf(series, "eval", "evaluate a series expression", [&] { return series_eval(s, expr, op); });
    eval->add_option("expr,--expr", expr, "series expression")->required();
    eval->add_option("--op", op, "operation applied to the series")
        ->check(CLI::IsMember({"value", "inverse", "derivative", "integrate", "exp-integral", "log-derivative",
                               "degree", "residue", "ld-preimage"}));

    auto* weyl = app.add_subcommand("weyl", "Weyl algebra")->require_subcommand(1);
    auto* norm = leaf(weyl, "normalize", "normal form of an operator expression", [&] { return weyl_normalize(s, expr); });
    norm->add_option("expr,--expr", expr, "operator expression")->required();

    auto* witt = app.add_subcommand("witt", "Witt algebra of vector fields f*D")->require_subcommand(1);
    auto* br = leaf(witt, "bracket", "bracket of two elements f*D", [&] { return witt_bracket_cmd(s, a_text, b_text); });
    br->add_option("a,--a", a_text)->required();
    br->add_option("b,--b", b_text)->required();
    auto* eig = leaf(witt, "eig", "eigenvector of ad(f*D)", [&] { return witt_eig(s, f_text, eig_text); });
    eig->add_option("--f", f_text, "series f")->required();
    eig->add_option("--eigenvalue", eig_text)->required();
    auto* spec = leaf(witt, "spec", "spectrum of ad(f*D) in a stable algebra",
                      [&] { return witt_spec(s, f_text, alg, cands); });
    spec->add_option("--f", f_text, "series f")->required();
    spec->add_option("--alg", alg, "poly, laurent, power or fraction")->capture_default_str();
    spec->add_option("--candidates", cands, "lo..hi or a comma list")->capture_default_str();

    auto* pmc = app.add_subcommand("pm", "pseudomonoids")->require_subcommand(1);
    auto* ideals = leaf(pmc, "ideals", "ideal subsets on the window", [&] { return pm_ideals(s, pm); });
    ideals->add_option("--pm", pm)->required();
    auto* simple = leaf(pmc, "simple", "simplicity verdict", [&] {
        return Output{verdict_json(simplicity_verdict(parse_pseudomonoid(pm), parse_window(s.window))), {}};
    });
    simple->add_option("--pm", pm)->required();
    auto* selfc = leaf(pmc, "self-containing", "search for a with aG strictly inside G", [&] {
        return Output{verdict_json(is_self_containing(parse_pseudomonoid(pm), search_bound)), {}};
    });
    selfc->add_option("--pm", pm)->required();
    selfc->add_option("--bound", search_bound, "height bound for candidate scalars")->capture_default_str();
    auto* equiv = leaf(pmc, "equiv", "search for k with G1 = kG2", [&] {
        return Output{
            verdict_json(equivalence_test(parse_pseudomonoid(pm), parse_pseudomonoid(other), parse_window(s.window))),
            {}};
    });
    equiv->add_option("--pm", pm)->required();
    equiv->add_option("--other", other)->required();

    auto* graded = app.add_subcommand("graded", "graded Lie algebras over a pseudomonoid")->require_subcommand(1);
    auto* gspec = leaf(graded, "spec", "eigenvalues of ad(alpha) on the window",
                       [&] { return graded_spec(s, alpha_text, pm, kernel_at); });
    gspec->add_option("--alpha", alpha_text, "{g: c, ...}")->required();
    gspec->add_option("--pm", pm)->capture_default_str();
    gspec->add_option("--kernel", kernel_at, "print the eigenspace basis for this eigenvalue instead");
    auto* endo = leaf(graded, "endo", "check an endomorphism on the window", [&] { return graded_endo(s, endo_text, pm); });
    endo->add_option("--spec", endo_text, "virasoro:<a> or scale:<k>")->required();
    endo->add_option("--pm", pm)->capture_default_str();

    auto* ver = leaf(&app, "verify", "run the invariant suites", [&] { return verify_cmd(s, suites); });
    ver->add_option("--suite", suites, "restrict to these suites");

    try {
        auto argv = glue_negative_values(args);
        std::reverse(argv.begin(), argv.end());
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const bool json = s.format == "json";
    auto fail = [&](std::string_view code, const std::string& message, int status) {
        if (json) {
            Json j;
            j["error"] = code;
            j["message"] = message;
            out << j.dump() << "\n";
        } else {
            err << "error (" << code << "): " << message << "\n";
        }
        return status;
    };

    if (prec_opt->count() == 0) {
        if (const char* env = std::getenv("WITTKIT_PREC")) {
            auto p = parse_scalar(env);
            if (!p || !is_integer(*p) || *p > 100000) return fail("InvalidArgument", "bad WITTKIT_PREC", 2);
            s.prec = to_long(*p);
        }
    }
    if (s.prec < 1) return fail("InvalidArgument", "precision must be positive", 2);
    if (s.degree_bound < 0) return fail("InvalidArgument", "degree bound must be nonnegative", 2);

    try {
        Output o = action();
        if (json)
            out << o.json.dump() << "\n";
        else
            out << (o.text.empty() ? key_value_text(o.json) : o.text);
        return o.status;
    } catch (const Error& e) {
        return fail(errc_name(e.code()), e.what(), is_usage_error(e.code()) ? 2 : 1);
    } catch (const std::exception& e) {
        return fail("Internal", e.what(), 1);
    }
}

}  // namespace wittkit
