#include "wittkit/error.hpp"
#include "wittkit/pseudomonoid.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace wittkit;

namespace {

std::vector<Scalar> ints(std::initializer_list<long> v) {
    std::vector<Scalar> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

std::vector<Scalar> range(long lo, long hi) {
    std::vector<Scalar> out;
    for (long x = lo; x <= hi; ++x) out.emplace_back(x);
    return out;
}

Errc code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::Internal;
}

// Monoid membership by direct search over i*n + j*m.
bool in_monoid(long n, long m, long x) {
    for (long i = 0; i * n <= x; ++i)
        for (long j = 0; i * n + j * m <= x; ++j)
            if (i * n + j * m == x) return true;
    return false;
}

// Every subset of {0..12} checked against the ideal condition for N directly.
std::vector<std::vector<long>> brute_force_ideals_of_n(long hi) {
    std::vector<std::vector<long>> out;
    const long n = hi + 1;
    for (long mask = 0; mask < (1L << n); ++mask) {
        auto in = [&](long x) { return x >= 0 && x <= hi && (mask >> x & 1); };
        bool ok = true;
        for (long a = 0; a <= hi && ok; ++a) {
            if (!in(a)) continue;
            for (long b = 0; a + b <= hi && ok; ++b)
                if (b != a && !in(a + b)) ok = false;
        }
        if (!ok) continue;
        std::vector<long> s;
        for (long x = 0; x <= hi; ++x)
            if (in(x)) s.push_back(x);
        out.push_back(s);
    }
    return out;
}

}  // namespace

TEST_CASE("pm_elements") {
    auto w = pm_elements(Pseudomonoid::witt(), Window(-3, 3));
    CHECK(w.elements == ints({-1, 0, 1, 2, 3}));
    CHECK(w.complete);

    auto g = pm_elements(Pseudomonoid::generated(ints({-1, 1})), Window(-5, 5));
    CHECK(g.elements == ints({-1, 0, 1}));
    CHECK(g.complete);

    auto m = pm_elements(Pseudomonoid::numerical(2, 3), Window(0, 8));
    CHECK(m.elements == ints({0, 2, 3, 4, 5, 6, 7, 8}));
    CHECK(m.complete);

    CHECK(pm_elements(Pseudomonoid::step(make_scalar(3, 2)), Window(-3, 3)).elements ==
          std::vector<Scalar>{-3, make_scalar(-3, 2), 0, make_scalar(3, 2), 3});
    CHECK(code_of([] { Pseudomonoid::finite(ints({0, 1, 2})); }) == Errc::NotAPseudomonoid);
    CHECK(code_of([] { Pseudomonoid::finite(ints({1})); }) == Errc::NotAPseudomonoid);
    CHECK(code_of([] { Window(2, 1); }) == Errc::InvalidArgument);
}

TEST_CASE("Numerical membership agrees with a direct search") {
    for (auto [n, m] : {std::pair{2L, 3L}, {3L, 5L}, {4L, 7L}}) {
        auto elems = pm_elements(Pseudomonoid::numerical(n, m), Window(-3, 40)).elements;
        std::vector<Scalar> expect;
        for (long x = 0; x <= 40; ++x)
            if (in_monoid(n, m, x)) expect.emplace_back(x);
        CHECK(elems == expect);
    }
}

TEST_CASE("generated closures") {
    // {-1, 2} closes to {-1, 0, 1, ...}.
    auto g = Pseudomonoid::generated(ints({-1, 2}));
    CHECK(g.membership_exact());
    CHECK(pm_elements(g, Window(-4, 5)).elements == range(-1, 5));
    CHECK(simplicity_verdict(g, Window(-4, 5)).kind == Verdict::Kind::Yes);

    // {2, 3} under distinct sums: 4 and 6 would need a repeated summand.
    auto p = Pseudomonoid::generated(ints({2, 3}));
    auto elems = pm_elements(p, Window(0, 12));
    CHECK(elems.complete);
    CHECK(elems.elements == ints({0, 2, 3, 5, 7, 8, 9, 10, 11, 12}));
    CHECK_FALSE(p.contains(4));
    CHECK(p.contains(10));

    // Mixed signs without a closed form stay partial.
    auto o = Pseudomonoid::generated(ints({-2, 3}));
    CHECK_FALSE(o.membership_exact());
    CHECK_FALSE(pm_elements(o, Window(-6, 6)).complete);
}

TEST_CASE("closure idempotence: complete windows of generated closures are pseudomonoids") {
    for (auto gens : {ints({-1, 1}), ints({-2}), ints({3}), ints({-1, 2})}) {
        auto g = Pseudomonoid::generated(gens);
        if (auto e = g.exact_elements()) {
            auto elems = pm_elements(g, Window(-10, 10));
            REQUIRE(elems.complete);
            CHECK_NOTHROW(Pseudomonoid::finite(elems.elements));
        }
    }
    // Infinite closures: the window is closed wherever sums stay inside it.
    auto g = Pseudomonoid::generated(ints({2, 5}));
    auto elems = pm_elements(g, Window(0, 30)).elements;
    CHECK(is_closed_subset(elems, g, Window(0, 30)));
}

TEST_CASE("closed and ideal subsets") {
    const auto n = Pseudomonoid::naturals();
    CHECK(is_closed_subset({}, n, Window(0, 10)));
    auto s = range(2, 10);
    s.insert(s.begin(), Scalar(0));
    CHECK(is_closed_subset(s, n, Window(0, 10)));
    CHECK_FALSE(is_closed_subset(ints({1, 2}), n, Window(0, 10)));
    CHECK(code_of([&] { is_closed_subset(ints({-1}), n, Window(-2, 10)); }) == Errc::SubsetNotInG);

    CHECK(is_ideal_subset(range(0, 12), n, Window(0, 12)));
    CHECK(is_ideal_subset(range(2, 12), n, Window(0, 12)));
    CHECK_FALSE(is_ideal_subset(ints({0}), n, Window(0, 12)));
}

TEST_CASE("ideal subsets of N on [0,12] match brute force") {
    auto oracle = brute_force_ideals_of_n(12);
    CHECK(oracle.size() == 15);

    // The one set outside {empty, I_0, ..., I_12}.
    std::vector<std::vector<long>> extra;
    for (const auto& s : oracle) {
        bool tail = s.empty() || s.back() == 12 && static_cast<long>(s.size()) == 13 - s.front();
        if (!tail) extra.push_back(s);
    }
    REQUIRE(extra.size() == 1);
    std::vector<long> expect{1};
    for (long x = 3; x <= 12; ++x) expect.push_back(x);
    CHECK(extra[0] == expect);

    auto found = enumerate_ideal_subsets(Pseudomonoid::naturals(), Window(0, 12));
    std::set<std::vector<Scalar>> got, want;
    for (const auto& s : found) {
        got.insert(s.elements);
        CHECK(s.extendable);
    }
    for (const auto& s : oracle) {
        std::vector<Scalar> v;
        for (long x : s) v.emplace_back(x);
        want.insert(v);
    }
    CHECK(found.size() == 15);
    CHECK(got == want);
}

TEST_CASE("ideal enumeration on other families") {
    auto z = enumerate_ideal_subsets(Pseudomonoid::integers(), Window(-6, 6));
    for (const auto& s : z)
        if (s.extendable) CHECK((s.elements.empty() || s.elements.size() == 13));

    auto m = enumerate_ideal_subsets(Pseudomonoid::numerical(2, 3), Window(0, 12));
    auto i2 = ints({2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12});
    bool has_i2 = std::any_of(m.begin(), m.end(), [&](const IdealSubset& s) { return s.elements == i2 && s.extendable; });
    CHECK(has_i2);

    auto w = enumerate_ideal_subsets(Pseudomonoid::witt(), Window(-1, 8));
    for (const auto& s : w) CHECK((s.elements.empty() || s.elements.size() == 10));

    CHECK(code_of([] { enumerate_ideal_subsets(Pseudomonoid::integers(), Window(-20, 20)); }) == Errc::WindowTooLarge);
}

TEST_CASE("ideal enumeration invariants") {
    std::vector<std::pair<Pseudomonoid, Window>> cases{
        {Pseudomonoid::naturals(), Window(0, 12)},   {Pseudomonoid::numerical(2, 3), Window(0, 14)},
        {Pseudomonoid::numerical(3, 5), Window(0, 16)}, {Pseudomonoid::witt(), Window(-1, 12)},
        {Pseudomonoid::integers(), Window(-5, 5)},   {Pseudomonoid::generated(ints({2, 5})), Window(0, 20)},
        {Pseudomonoid::finite(ints({-1, 0, 1})), Window(-3, 3)},
    };
    for (const auto& [g, w] : cases) {
        const auto full = pm_elements(g, w).elements;
        for (const auto& s : enumerate_ideal_subsets(g, w)) {
            CHECK(is_ideal_subset(s.elements, g, w));
            CHECK(is_closed_subset(s.elements, g, w));
            auto has = [&](const Scalar& x) { return std::binary_search(s.elements.begin(), s.elements.end(), x); };
            if (has(0)) CHECK(s.elements == full);
            for (const auto& x : s.elements)
                if (w.contains(-x) && g.contains(-x)) CHECK(s.elements == full);
        }
    }
}

TEST_CASE("simplicity verdicts") {
    auto z = simplicity_verdict(Pseudomonoid::integers(), Window(-8, 8));
    CHECK(z.kind == Verdict::Kind::Yes);
    CHECK(z.reason == "group");
    CHECK(z.complete);

    auto w = simplicity_verdict(Pseudomonoid::witt(), Window(-8, 8));
    CHECK(w.kind == Verdict::Kind::Yes);
    CHECK(w.reason == "exhaustive");

    auto n = simplicity_verdict(Pseudomonoid::naturals(), Window(-8, 8));
    CHECK(n.kind == Verdict::Kind::No);
    REQUIRE(n.ideal);
    CHECK(*n.ideal == range(1, 8));
    CHECK(is_ideal_subset(*n.ideal, Pseudomonoid::naturals(), Window(-8, 8)));

    auto m = simplicity_verdict(Pseudomonoid::numerical(2, 3), Window(0, 12));
    CHECK(m.kind == Verdict::Kind::No);
    REQUIRE(m.ideal);
    CHECK(is_ideal_subset(*m.ideal, Pseudomonoid::numerical(2, 3), Window(0, 12)));

    CHECK(simplicity_verdict(Pseudomonoid::finite(ints({0, 1})), Window(-2, 2)).kind == Verdict::Kind::No);
    CHECK(simplicity_verdict(Pseudomonoid::integers(), Window(-100, 100)).kind == Verdict::Kind::Yes);
    CHECK(simplicity_verdict(Pseudomonoid::naturals(), Window(0, 100)).kind == Verdict::Kind::Unknown);
}

TEST_CASE("self-containment") {
    auto z = is_self_containing(Pseudomonoid::integers(), 4);
    CHECK(z.kind == Verdict::Kind::Yes);
    CHECK(z.scalar == Scalar(2));
    CHECK(z.complete);

    auto w = is_self_containing(Pseudomonoid::witt(), 4);
    CHECK(w.kind == Verdict::Kind::No);
    CHECK(w.reason == "unit-forcing");

    auto n = is_self_containing(Pseudomonoid::naturals(), 4);
    CHECK(n.kind == Verdict::Kind::Yes);
    CHECK(n.scalar == Scalar(2));
    // Oracle: 2N inside N on a window, and 1 is not in 2N.
    for (long x = 0; x <= 50; ++x) CHECK(Pseudomonoid::naturals().contains(2 * x));
    CHECK_FALSE(is_integer(Scalar(1) / 2));

    CHECK(is_self_containing(Pseudomonoid::finite(ints({-1, 0, 1})), 4).kind == Verdict::Kind::No);

    // {1, 2} closes to N; the search has to find 2 on its own.
    auto g = is_self_containing(Pseudomonoid::generated(ints({1, 2})), 4);
    CHECK(g.kind == Verdict::Kind::Yes);
    CHECK(g.scalar == Scalar(2));
    CHECK_FALSE(g.complete);
    CHECK(is_self_containing(Pseudomonoid::generated(ints({2, 5})), 4).kind != Verdict::Kind::No);
}

TEST_CASE("equivalence") {
    auto a = equivalence_test(Pseudomonoid::step(3), Pseudomonoid::integers(), Window(-8, 8));
    CHECK(a.kind == Verdict::Kind::Yes);
    CHECK(a.scalar == Scalar(3));
    CHECK(a.complete);

    auto b = equivalence_test(Pseudomonoid::witt(), Pseudomonoid::integers(), Window(-8, 8));
    CHECK(b.kind == Verdict::Kind::No);
    CHECK(b.complete);

    auto c = equivalence_test(Pseudomonoid::finite(ints({-1, 0, 1})), Pseudomonoid::finite(ints({-2, 0, 2})),
                              Window(-8, 8));
    CHECK(c.kind == Verdict::Kind::Yes);
    CHECK(c.scalar == Scalar(2));
    CHECK(c.complete);

    auto d = equivalence_test(Pseudomonoid::witt(), Pseudomonoid::generated(ints({-1, 2})), Window(-8, 8));
    CHECK(d.kind == Verdict::Kind::Yes);
    CHECK(d.complete);

    std::vector<Pseudomonoid> builtins{Pseudomonoid::integers(), Pseudomonoid::naturals(), Pseudomonoid::witt(),
                                       Pseudomonoid::step(make_scalar(2, 3)), Pseudomonoid::numerical(3, 4)};
    for (const auto& g : builtins) {
        auto self = equivalence_test(g, g, Window(-8, 8));
        CHECK(self.kind == Verdict::Kind::Yes);
        CHECK(self.scalar == Scalar(1));
        for (const auto& h : builtins)
            CHECK(equivalence_test(g, h, Window(-8, 8)).kind == equivalence_test(h, g, Window(-8, 8)).kind);
    }
}

TEST_CASE("finite pseudomonoids have order at most 3") {
    // Every set {0} plus up to three nonzero elements from a grid of halves.
    std::vector<Scalar> grid;
    for (long p = -6; p <= 6; ++p)
        if (p != 0) grid.push_back(make_scalar(p, 2));
    const auto zero = Pseudomonoid::finite({Scalar(0)});
    const auto one = Pseudomonoid::finite(ints({0, 1}));
    const auto two = Pseudomonoid::finite(ints({-1, 0, 1}));
    std::set<std::size_t> orders;
    const std::size_t k = grid.size();
    for (std::size_t i = 0; i <= k; ++i)
        for (std::size_t j = i; j <= k; ++j)
            for (std::size_t l = j; l <= k; ++l) {
                std::vector<Scalar> s{0};
                for (auto idx : {i, j, l})
                    if (idx < k) s.push_back(grid[idx]);
                std::sort(s.begin(), s.end());
                s.erase(std::unique(s.begin(), s.end()), s.end());
                std::optional<Pseudomonoid> g;
                try {
                    g = Pseudomonoid::finite(s);
                } catch (const Error&) {
                    continue;
                }
                orders.insert(s.size());
                const auto& model = s.size() == 1 ? zero : s.size() == 2 ? one : two;
                auto v = equivalence_test(*g, model, Window(-4, 4));
                CHECK(v.kind == Verdict::Kind::Yes);
                CHECK(v.complete);
            }
    CHECK(orders == std::set<std::size_t>{1, 2, 3});
}

TEST_CASE("extreme elements") {
    auto w = extreme_elements(Pseudomonoid::witt(), Window(-5, 5), OrderChoice::Ascending);
    CHECK(w.min == Scalar(-1));
    CHECK(w.min_certified);
    CHECK(w.max == Scalar(5));
    CHECK_FALSE(w.max_certified);

    auto z = extreme_elements(Pseudomonoid::integers(), Window(-4, 4), OrderChoice::Ascending);
    CHECK(z.min == Scalar(-4));
    CHECK(z.max == Scalar(4));
    CHECK_FALSE(z.min_certified);
    CHECK_FALSE(z.max_certified);

    auto f = extreme_elements(Pseudomonoid::finite(ints({-1, 0, 1})), Window(-8, 8), OrderChoice::Ascending);
    CHECK(f.min == Scalar(-1));
    CHECK(f.max == Scalar(1));
    CHECK(f.min_certified);
    CHECK(f.max_certified);

    auto d = extreme_elements(Pseudomonoid::witt(), Window(-5, 5), OrderChoice::Descending);
    CHECK(d.min == Scalar(5));
    CHECK(d.max == Scalar(-1));
    CHECK(d.max_certified);
}

TEST_CASE("names round trip") {
    for (auto text : {"Z", "N", "Witt", "dZ:3/2", "Mnm:2,3", "set:{-1,0,1}", "gen:{-1,2}"})
        CHECK(to_string(parse_pseudomonoid(text)) == text);
    CHECK(parse_window("-3:5") == Window(-3, 5));
    CHECK(code_of([] { parse_pseudomonoid("Q"); }) == Errc::ParseError);
    CHECK(code_of([] { parse_window("3"); }) == Errc::ParseError);
}
