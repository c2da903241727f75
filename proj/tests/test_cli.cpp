#include "wittkit/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <set>
#include <sstream>

using nlohmann::json;

namespace {

struct Run {
    int status;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int status = wittkit::run_cli(std::move(args), out, err);
    return {status, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
    args.push_back("--format");
    args.push_back("json");
    auto r = run(args);
    return json::parse(r.out);
}

bool keys_within(const json& j, std::set<std::string> allowed) {
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k)) return false;
    return true;
}

}  // namespace

TEST_CASE("spectrum table for x*D on polynomials") {
    auto r = run({"witt", "spec", "--f", "x", "--alg", "poly", "--candidates", "-2..4"});
    CHECK(r.status == 0);
    CHECK(r.out == "-2\tNo(-1)\n-1\tYesExact\n0\tYesExact\n1\tYesExact\n2\tYesExact\n3\tYesExact\n4\tYesExact\n");

    auto j = run_json({"witt", "spec", "--f", "x", "--alg", "poly", "--candidates", "-2..4"});
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 7);
    CHECK(j[0] == json({{"eigenvalue", "-2"}, {"verdict", "No"}, {"witnessExponent", -1}}));
    for (std::size_t i = 1; i < j.size(); ++i) CHECK(j[i]["verdict"] == "YesExact");
}

TEST_CASE("spectrum rows for eigenvalues without eigenvector") {
    auto j = run_json({"witt", "spec", "--f", "x^2", "--alg", "fraction", "--candidates", "0,1,1/2"});
    REQUIRE(j.size() == 3);
    CHECK(j[0]["verdict"] != "No");
    CHECK(j[1] == json({{"eigenvalue", "1"}, {"verdict", "No"}, {"reason", "NoEigenvector"}}));
    CHECK(j[2]["reason"] == "NoEigenvector");
    for (const auto& row : j)
        CHECK(keys_within(row, {"eigenvalue", "verdict", "witnessExponent", "reason", "degreeBound", "prec"}));
}

TEST_CASE("pseudomonoid verdict records") {
    auto j = run_json({"pm", "simple", "--pm", "Z"});
    CHECK(j == json({{"verdict", "Yes"}, {"reason", "group"}, {"complete", true}}));

    j = run_json({"pm", "simple", "--pm", "Mnm:2,3", "--window", "0:14"});
    CHECK(j["verdict"] == "No");
    CHECK(j["witness"].is_array());
    CHECK(!j["witness"].empty());

    j = run_json({"pm", "self-containing", "--pm", "Witt"});
    CHECK(j["verdict"] == "No");
    j = run_json({"pm", "self-containing", "--pm", "N"});
    CHECK(j["verdict"] == "Yes");
    CHECK(j["witness"] == "2");

    j = run_json({"pm", "equiv", "--pm", "dZ:3", "--other", "Z"});
    CHECK(j["verdict"] == "Yes");
    CHECK(j["witness"] == "3");

    for (const auto& pm : {"Z", "N", "Witt", "dZ:2", "set:{-1,0,1}", "gen:{2,3}"})
        CHECK(keys_within(run_json({"pm", "simple", "--pm", pm}), {"verdict", "witness", "reason", "complete"}));
}

TEST_CASE("ideal listing") {
    auto j = run_json({"pm", "ideals", "--pm", "N", "--window", "0:12"});
    CHECK(j["count"] == 15);
    CHECK(j["ideals"].size() == 15);
    auto r = run({"pm", "ideals", "--pm", "N", "--window", "0:40"});
    CHECK(r.status == 1);
    CHECK(r.err.find("WindowTooLarge") != std::string::npos);
}

TEST_CASE("Virasoro endomorphism report") {
    auto j = run_json({"graded", "endo", "--spec", "virasoro:2", "--window", "-6:6"});
    CHECK(j["pass"] == true);
    CHECK(!j.contains("counterexample"));
    CHECK(j["injectiveOnWindow"] == true);
    CHECK(j["ontoWindow"] == false);
    for (const auto& g : j["imageGrades"]) CHECK(g != "1");
    for (const auto* key : {"pass", "imageGrades", "injectiveOnWindow", "ontoWindow"}) CHECK(j.contains(key));

    auto r = run({"graded", "endo", "--spec", "virasoro:0"});
    CHECK(r.status == 1);
    CHECK(r.err.find("InvalidEndo") != std::string::npos);
}

TEST_CASE("graded spectrum on the window") {
    auto j = run_json({"graded", "spec", "--alpha", "{0: 1, -1: 1}", "--pm", "Witt", "--window", "-1:10"});
    REQUIRE(j["eigenvalues"].is_array());
    CHECK(j["eigenvalues"].front() == "-1");
    CHECK(j["eigenvalues"].size() >= 10);

    j = run_json({"graded", "spec", "--alpha", "{0: 1}", "--kernel", "3"});
    CHECK(j["kernel"] == json::array({"{3: 1}"}));

    auto r = run({"graded", "spec", "--alpha", "{1: 1, 2: 1}"});
    CHECK(r.status == 1);
    CHECK(r.err.find("UnsupportedForm") != std::string::npos);
}

TEST_CASE("series, Weyl and Witt commands") {
    CHECK(run_json({"series", "eval", "x^-1 + 2 + 3/2x^3"})["result"] == "x^-1 + 2 + 3/2*x^3");
    CHECK(run({"series", "eval", "--expr", "-x + 1"}).status == 0);
    CHECK(run_json({"series", "eval", "x^2 + x^3", "--op", "degree"})["result"] == "2");
    CHECK(run_json({"series", "eval", "1 + x + O(x^3)", "--op", "degree"})["result"] == "0");
    auto pre = run_json({"series", "eval", "2*x^-1 + 1", "--op", "ld-preimage"})["result"];
    CHECK(pre["case"] == "b");
    CHECK(pre["residue"] == 2);
    CHECK(run_json({"series", "eval", "x^-3", "--op", "ld-preimage"})["result"]["case"] == "none");

    CHECK(run_json({"weyl", "normalize", "D*x"}) == json({{"result", "x*D + 1"}, {"order", 1}}));
    CHECK(run_json({"witt", "bracket", "x*D", "x^2*D"})["result"] == "x^2*D");
    CHECK(run_json({"witt", "eig", "--f", "1 + x", "--eigenvalue", "2", "--prec", "8"})["eigenvector"] ==
          "(1 + 3*x + 3*x^2 + x^3 + O(x^9))*D");
}

TEST_CASE("precision flag and environment override") {
    auto flag = run_json({"series", "eval", "1/(1 - x)", "--prec", "4"})["result"].get<std::string>();
    CHECK(flag == "1 + x + x^2 + x^3 + O(x^4)");
    ::setenv("WITTKIT_PREC", "3", 1);
    auto env = run_json({"series", "eval", "1/(1 - x)"})["result"].get<std::string>();
    auto both = run_json({"series", "eval", "1/(1 - x)", "--prec", "2"})["result"].get<std::string>();
    ::unsetenv("WITTKIT_PREC");
    CHECK(env == "1 + x + x^2 + O(x^3)");
    CHECK(both == "1 + x + O(x^2)");
}

TEST_CASE("exit codes") {
    CHECK(run({"witt", "eig", "--f", "x^2", "--eigenvalue", "1"}).status == 1);
    CHECK(run({"series", "eval", "x^-1", "--op", "integrate"}).status == 1);
    auto parse = run({"series", "eval", "1 + x +"});
    CHECK(parse.status == 2);
    CHECK(parse.err.find("position 7") != std::string::npos);
    CHECK(run({"nonsense"}).status == 2);
    CHECK(run({}).status == 2);
    CHECK(run({"pm", "simple"}).status == 2);
    CHECK(run({"pm", "simple", "--pm", "Q"}).status == 2);
    CHECK(run({"pm", "simple", "--pm", "Z", "--window", "5:1"}).status == 2);
    CHECK(run({"series", "eval", "x", "--format", "yaml"}).status == 2);
    CHECK(run({"series", "eval", "x", "--prec", "0"}).status == 2);
    CHECK(run({"--help"}).status == 0);

    auto j = run_json({"witt", "eig", "--f", "x^2", "--eigenvalue", "1"});
    CHECK(j["error"] == "NoEigenvector");
    CHECK(j.contains("message"));
}

TEST_CASE("text and json carry the same fields") {
    const std::vector<std::vector<std::string>> cmds{
        {"pm", "simple", "--pm", "N"},
        {"pm", "equiv", "--pm", "set:{-1,0,1}", "--other", "set:{-2,0,2}"},
        {"graded", "endo", "--spec", "virasoro:-3", "--window", "-6:6"},
        {"graded", "spec", "--alpha", "{0: 2}", "--window", "-3:3"},
        {"series", "eval", "x + x^2", "--op", "log-derivative", "--prec", "6"},
    };
    for (const auto& c : cmds) {
        auto text = run(c).out;
        auto j = run_json(c);
        for (const auto& [k, v] : j.items()) {
            CHECK(text.find(k + ": ") != std::string::npos);
            if (v.is_string()) CHECK(text.find(v.get<std::string>()) != std::string::npos);
        }
    }
}

TEST_CASE("verify is reproducible") {
    auto a = run({"verify", "--seed", "0"});
    auto b = run({"verify", "--seed", "0"});
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("FAIL") == std::string::npos);
    auto ja = run({"verify", "--seed", "7", "--format", "json"});
    auto jb = run({"verify", "--seed", "7", "--format", "json"});
    CHECK(ja.out == jb.out);
    CHECK(json::parse(ja.out)["pass"] == true);

    auto one = run_json({"verify", "--suite", "jacobi"});
    CHECK(one["suites"].size() == 1);
    CHECK(run({"verify", "--suite", "nope"}).status == 2);
}
