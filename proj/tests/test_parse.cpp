#include "wittkit/error.hpp"
#include "wittkit/graded.hpp"
#include "wittkit/parse.hpp"
#include "wittkit/random.hpp"

#include <doctest.h>

#include <string>

using namespace wittkit;

namespace {

LaurentSeries M(long n, long d, Exponent e) { return LaurentSeries::monomial(make_scalar(n, d), e); }

std::string error_text(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ParseError);
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("series literals") {
    CHECK(parse_series("x^-1 + 2 + 3/2x^3") == M(1, 1, -1) + M(2, 1, 0) + M(3, 2, 3));
    CHECK(parse_series("3/2*x^3") == M(3, 2, 3));
    auto t = parse_series("1 + x + O(x^2)");
    CHECK(t.precision() == 2);
    CHECK(t.coeff(1) == 1);
    CHECK(parse_series("O(x^3)") == LaurentSeries::big_o(3));
    CHECK(parse_series("(1 + x)^2") == M(1, 1, 0) + M(2, 1, 1) + M(1, 1, 2));
    CHECK(parse_series("x/2") == M(1, 2, 1));
    CHECK(parse_series("1/(1 - x)") == inverse(M(1, 1, 0) - M(1, 1, 1)));
    CHECK(parse_series("-x - 1") == -(M(1, 1, 1) + M(1, 1, 0)));
    CHECK(parse_series("0") == LaurentSeries{});
}

TEST_CASE("operator literals") {
    auto w = parse_expression("[x*D, x^2*D]");
    CHECK(w.as_witt() == WittElement(M(1, 1, 2)));
    CHECK(parse_weyl("D*x") == parse_weyl("x*D + 1"));
    CHECK(parse_weyl("D^2") == WeylElement::term(LaurentSeries::constant(1), 2));
    CHECK(parse_witt("(1 + x)*D") == WittElement(M(1, 1, 0) + M(1, 1, 1)));
}

TEST_CASE("parse errors carry a position and the expected tokens") {
    auto msg = error_text([] { parse_expression("1 + * x"); });
    CHECK(msg.find("position 4") != std::string::npos);
    CHECK(msg.find("'x'") != std::string::npos);
    CHECK(error_text([] { parse_expression("(1 + x"); }).find("')'") != std::string::npos);
    CHECK(error_text([] { parse_expression("x )"); }).find("end of input") != std::string::npos);
    CHECK(!error_text([] { parse_expression("D^-1"); }).empty());
    CHECK(!error_text([] { parse_expression("1/D"); }).empty());
}

TEST_CASE("print/parse round trip, 500 values per kind") {
    gen::Rng rng(51);
    for (int i = 0; i < 500; ++i) {
        auto f = gen::exact_laurent(rng, -5, 6);
        CHECK(parse_series(to_string(f)) == f);

        auto lead = gen::uniform(rng, -4, 4);
        auto t = gen::truncated_series(rng, lead, lead + gen::uniform(rng, 1, 6));
        CHECK(parse_series(to_string(t)) == t);
    }
    for (int i = 0; i < 500; ++i) {
        std::vector<LaurentSeries> cs;
        const auto n = gen::uniform(rng, 1, 4);
        for (long k = 0; k < n; ++k)
            cs.push_back(gen::uniform(rng, 0, 2) == 0 ? LaurentSeries{} : gen::exact_laurent(rng, -3, 3, 3));
        WeylElement a(cs);
        CHECK(parse_weyl(to_string(a)) == a);
    }
    for (int i = 0; i < 500; ++i) {
        LaurentSeries f;
        if (i % 2 == 0) {
            f = gen::exact_laurent(rng, -4, 5);
        } else {
            auto lead = gen::uniform(rng, -3, 3);
            f = gen::truncated_series(rng, lead, lead + gen::uniform(rng, 1, 5));
        }
        WittElement a(f);
        CHECK(parse_witt(to_string(a)) == a);
    }
    for (int i = 0; i < 500; ++i) {
        std::map<Scalar, Scalar> t;
        const auto n = gen::uniform(rng, 0, 4);
        for (long k = 0; k < n; ++k) t[gen::rational(rng, 8, 2)] = gen::nonzero_rational(rng);
        GradedElement x(t);
        CHECK(parse_graded(to_string(x)) == x);
    }
}
