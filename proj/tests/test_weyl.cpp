#include "wittkit/error.hpp"
#include "wittkit/random.hpp"
#include "wittkit/weyl.hpp"

#include <doctest.h>

using namespace wittkit;

namespace {

LaurentSeries M(long n, Exponent e) { return LaurentSeries::monomial(make_scalar(n), e); }
WeylElement W(const LaurentSeries& f, std::size_t p = 0) { return WeylElement::term(f, p); }

// Acts with the operator on a Laurent polynomial: sum_i f_i * h^(i).
LaurentSeries apply(const WeylElement& op, const LaurentSeries& h) {
    LaurentSeries out;
    LaurentSeries dh = h;
    for (std::size_t i = 0; i < op.coefficients().size(); ++i) {
        out = out + op.coefficients()[i] * dh;
        dh = derivative(dh);
    }
    return out;
}

WeylElement random_weyl(gen::Rng& rng) {
    std::vector<LaurentSeries> cs(static_cast<std::size_t>(gen::uniform(rng, 1, 4)));
    for (auto& c : cs)
        if (gen::uniform(rng, 0, 3) != 0) c = gen::exact_laurent(rng, -4, 4, 3);
    cs.back() = gen::exact_laurent(rng, -4, 4, 3);
    return WeylElement(std::move(cs));
}

}  // namespace

TEST_CASE("D x = x D + 1") {
    CHECK(weyl_mul(WeylElement::d(), W(M(1, 1))) == W(M(1, 1), 1) + W(M(1, 0)));
    CHECK(to_string(weyl_mul(WeylElement::d(), W(M(1, 1)))) == "x*D + 1");
}

TEST_CASE("(x D)(x D) = x^2 D^2 + x D, checked by action on monomials") {
    auto xd = W(M(1, 1), 1);
    auto sq = weyl_mul(xd, xd);
    CHECK(sq == W(M(1, 2), 2) + xd);
    for (Exponent j = 0; j <= 5; ++j) {
        auto h = M(1, j);
        CHECK(apply(sq, h) == apply(xd, apply(xd, h)));
        CHECK(apply(sq, h) == M(j * j, j));
    }
}

TEST_CASE("identity, order and bracket examples") {
    auto a = W(M(1, -1), 3) + W(M(1, 1));
    CHECK(weyl_mul(W(M(1, 0)), a) == a);
    CHECK(order(W(M(1, 2), 3) + WeylElement::d()) == OrderValue::finite(3));
    CHECK(order(WeylElement{}) == OrderValue::neg_infinity());
    CHECK(order(weyl_mul(W(M(1, 0), 2), W(M(1, 1), 1))) == OrderValue::finite(3));

    CHECK(weyl_bracket(WeylElement::d(), W(M(1, 1))) == W(M(1, 0)));
    CHECK(weyl_bracket(a, a).is_zero());
    CHECK(weyl_bracket(W(M(1, 1), 1), W(M(1, 2), 1)) == W(M(1, 2), 1));
}

TEST_CASE("truncated coefficients are rejected") {
    CHECK_THROWS_AS(WeylElement({LaurentSeries::big_o(3)}), Error);
}

TEST_CASE("order additivity, associativity, Jacobi") {
    gen::Rng rng(21);
    for (int i = 0; i < 200; ++i) {
        auto a = random_weyl(rng);
        auto b = random_weyl(rng);
        auto ab = weyl_mul(a, b);
        CHECK(order(ab).value == order(a).value + order(b).value);
        CHECK_FALSE(ab.is_zero());
    }
    for (int i = 0; i < 40; ++i) {
        auto a = random_weyl(rng);
        auto b = random_weyl(rng);
        auto c = random_weyl(rng);
        CHECK(weyl_mul(weyl_mul(a, b), c) == weyl_mul(a, weyl_mul(b, c)));
        auto jac = weyl_bracket(a, weyl_bracket(b, c)) + weyl_bracket(b, weyl_bracket(c, a)) +
                   weyl_bracket(c, weyl_bracket(a, b));
        CHECK(jac.is_zero());
    }
}
