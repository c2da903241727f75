#include "wittkit/verify.hpp"

#include "wittkit/error.hpp"
#include "wittkit/graded.hpp"
#include "wittkit/parse.hpp"
#include "wittkit/pseudomonoid.hpp"
#include "wittkit/random.hpp"
#include "wittkit/series.hpp"
#include "wittkit/weyl.hpp"
#include "wittkit/witt.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace wittkit {

namespace {

class Tally {
public:
    explicit Tally(SuiteResult& r) : r_(r) {}

    void check(bool ok, const std::string& what) {
        ++r_.cases;
        if (ok) return;
        ++r_.failures;
        if (r_.first_failure.empty()) r_.first_failure = what;
    }

private:
    SuiteResult& r_;
};

using Suite = std::function<void(gen::Rng&, Tally&)>;

LaurentSeries mono(const Scalar& c, Exponent e) { return LaurentSeries::monomial(c, e); }

GradedElement random_graded(gen::Rng& rng, const std::vector<Scalar>& grades, int max_terms) {
    GradedElement x;
    const long n = gen::uniform(rng, 1, max_terms);
    for (long i = 0; i < n; ++i) {
        const auto& g = grades[static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<long>(grades.size()) - 1))];
        x = x + GradedElement::basis(g, gen::nonzero_rational(rng));
    }
    return x;
}

WeylElement random_weyl(gen::Rng& rng, long max_order) {
    std::vector<LaurentSeries> cs;
    const long n = gen::uniform(rng, 0, max_order);
    for (long i = 0; i <= n; ++i) cs.push_back(gen::exact_laurent(rng, -3, 3, 3));
    return WeylElement(cs);
}

void bracket_table(gen::Rng&, Tally& t) {
    for (long n = -5; n <= 5; ++n)
        for (long m = -5; m <= 5; ++m) {
            const auto expect = mono(Scalar(m - n), n + m - 1);
            const WittElement a(mono(1, n)), b(mono(1, m));
            const std::string tag = "[x^" + std::to_string(n) + " D, x^" + std::to_string(m) + " D]";
            t.check(witt_bracket(a, b) == WittElement(expect), tag + " via witt_bracket");
            t.check(weyl_bracket(to_weyl(a), to_weyl(b)) == WeylElement::term(expect, 1), tag + " via weyl_bracket");
        }
}

void series_ring(gen::Rng& rng, Tally& t) {
    for (int i = 0; i < 100; ++i) {
        auto f = gen::exact_laurent(rng, -6, 6);
        auto g = gen::exact_laurent(rng, -6, 6);
        auto h = gen::exact_laurent(rng, -6, 6);
        t.check((f * g) * h == f * (g * h), "associativity");
        t.check(f * (g + h) == f * g + f * h, "distributivity");
        t.check(f * g == g * f, "commutativity");
    }
}

void leibniz(gen::Rng& rng, Tally& t) {
    for (int i = 0; i < 100; ++i) {
        auto f = gen::exact_laurent(rng, -6, 6);
        auto g = gen::truncated_series(rng, gen::uniform(rng, -3, 3), 12);
        t.check(equal_to_precision(derivative(f * g), derivative(f) * g + f * derivative(g)),
                "Leibniz for " + to_string(f) + " and " + to_string(g));
    }
}

void ld_homomorphism(gen::Rng& rng, Tally& t) {
    for (int i = 0; i < 100; ++i) {
        auto u = gen::truncated_series(rng, gen::uniform(rng, -3, 3), 14);
        auto v = gen::exact_laurent(rng, -3, 3, 3);
        t.check(equal_to_precision(log_derivative(u * v), log_derivative(u) + log_derivative(v)),
                "LD(uv) for " + to_string(u) + " and " + to_string(v));
    }
}

void ld_preimage_suite(gen::Rng& rng, Tally& t) {
    for (int i = 0; i < 100; ++i) {
        auto g = gen::truncated_series(rng, gen::uniform(rng, 0, 2), 26);
        auto u = exp_integral(g);
        auto back = log_derivative(u);
        t.check(equal_to_precision(back, g) && back.precision() && *back.precision() >= 24,
                "LD(exp_integral(g)) for " + to_string(g));
    }
    for (int i = 0; i < 50; ++i) {
        const long r = gen::uniform(rng, -6, 6);
        auto g = mono(Scalar(r), -1) + gen::truncated_series(rng, 0, 20);
        auto pre = ld_preimage(g);
        bool ok = false;
        if (const auto* b = std::get_if<LdCaseB>(&pre))
            ok = b->residue == r && equal_to_precision(log_derivative(b->witness), g);
        else if (const auto* a = std::get_if<LdCaseA>(&pre))
            ok = r == 0 && equal_to_precision(log_derivative(a->witness), g);
        t.check(ok, "preimage round trip for " + to_string(g));
    }
    for (int i = 0; i < 25; ++i) {
        auto low = gen::truncated_series(rng, gen::uniform(rng, -6, -2), 4);
        t.check(std::holds_alternative<LdNoPreimage>(ld_preimage(low)), "W < -1 must have no preimage");
        long q = gen::uniform(rng, 2, 5);
        auto frac = mono(make_scalar(gen::uniform(rng, 1, 9) * q + 1, q), -1) + gen::truncated_series(rng, 0, 6);
        t.check(std::holds_alternative<LdNoPreimage>(ld_preimage(frac)), "non-integer residue must have no preimage");
    }
}

void weyl_order(gen::Rng& rng, Tally& t) {
    for (int i = 0; i < 200; ++i) {
        auto a = random_weyl(rng, 3);
        auto b = random_weyl(rng, 3);
        auto oa = order(a), ob = order(b), oab = order(a * b);
        t.check(!oab.negative_infinity && oab.value == oa.value + ob.value,
                "order of (" + to_string(a) + ")(" + to_string(b) + ")");
    }
}

void jacobi(gen::Rng& rng, Tally& t) {
    for (int i = 0; i < 200; ++i) {
        WittElement a(gen::exact_laurent(rng, -4, 4)), b(gen::exact_laurent(rng, -4, 4)),
            c(gen::exact_laurent(rng, -4, 4));
        auto j = witt_bracket(a, witt_bracket(b, c)) + witt_bracket(b, witt_bracket(c, a)) +
                 witt_bracket(c, witt_bracket(a, b));
        t.check(j.is_zero(), "Witt Jacobi");
    }
    const auto z = Pseudomonoid::integers();
    const Window w(-16, 16);
    const auto grades = pm_elements(z, Window(-5, 5)).elements;
    for (int i = 0; i < 200; ++i) {
        auto x = random_graded(rng, grades, 3), y = random_graded(rng, grades, 3), u = random_graded(rng, grades, 3);
        auto j = graded_bracket(x, graded_bracket(y, u, z, w), z, w) + graded_bracket(y, graded_bracket(u, x, z, w), z, w) +
                 graded_bracket(u, graded_bracket(x, y, z, w), z, w);
        t.check(j.is_zero(), "graded Jacobi");
    }
    for (int i = 0; i < 200; ++i) {
        auto a = random_weyl(rng, 2), b = random_weyl(rng, 2), c = random_weyl(rng, 2);
        auto j = weyl_bracket(a, weyl_bracket(b, c)) + weyl_bracket(b, weyl_bracket(c, a)) +
                 weyl_bracket(c, weyl_bracket(a, b));
        t.check(j.is_zero(), "Weyl Jacobi");
    }
}

void index_laws(gen::Rng& rng, Tally& t) {
    const auto z = Pseudomonoid::integers();
    const Window w(-16, 16);
    const auto grades = pm_elements(z, Window(-6, 6)).elements;
    int done = 0;
    while (done < 200) {
        auto x = random_graded(rng, grades, 4), y = random_graded(rng, grades, 4);
        if (x.is_zero() || y.is_zero() || term(x) == term(y)) continue;
        ++done;
        auto b = graded_bracket(x, y, z, w);
        t.check(!b.is_zero() && term(b) == term(x) + term(y), "term([x,y]) for " + to_string(x) + ", " + to_string(y));
    }
}

void eigen_dimension(gen::Rng& rng, Tally& t) {
    const auto witt = Pseudomonoid::witt();
    const Window w(-1, 9);
    const auto grades = pm_elements(witt, Window(-1, 2)).elements;
    for (int i = 0; i < 20; ++i) {
        auto alpha = random_graded(rng, grades, 3);
        if (alpha.is_zero()) continue;
        for (long mu = -3; mu <= 6; ++mu) {
            auto k = eigen_kernel(alpha, Scalar(mu), witt, w);
            bool ok = k.size() <= 1;
            for (const auto& v : k) ok = ok && graded_bracket(alpha, v, witt, w) == Scalar(mu) * v;
            t.check(ok, "eigen kernel of " + to_string(alpha) + " at " + std::to_string(mu));
        }
    }
    const auto z = Pseudomonoid::integers();
    for (long mu = -4; mu <= 4; ++mu)
        t.check(eigen_kernel(GradedElement::basis(0), Scalar(mu), z, Window(-6, 6)).size() == 1, "e_0 kernel");
}

void ideal_invariants(gen::Rng&, Tally& t) {
    const std::vector<std::pair<Pseudomonoid, Window>> cases{
        {Pseudomonoid::naturals(), Window(0, 12)},
        {Pseudomonoid::numerical(2, 3), Window(0, 14)},
        {Pseudomonoid::witt(), Window(-1, 12)},
        {Pseudomonoid::integers(), Window(-5, 5)},
    };
    for (const auto& [g, w] : cases)
        for (const auto& s : enumerate_ideal_subsets(g, w))
            t.check(is_ideal_subset(s.elements, g, w) && is_closed_subset(s.elements, g, w),
                    "ideal subset of " + to_string(g));
}

void round_trip(gen::Rng& rng, Tally& t) {
    for (int i = 0; i < 500; ++i) {
        auto f = gen::exact_laurent(rng, -5, 6);
        t.check(parse_series(to_string(f)) == f, "series " + to_string(f));
        const auto lead = gen::uniform(rng, -4, 4);
        auto s = gen::truncated_series(rng, lead, lead + gen::uniform(rng, 1, 6));
        t.check(parse_series(to_string(s)) == s, "series " + to_string(s));
        auto a = random_weyl(rng, 3);
        t.check(parse_weyl(to_string(a)) == a, "Weyl " + to_string(a));
        WittElement v(gen::exact_laurent(rng, -4, 5));
        t.check(parse_witt(to_string(v)) == v, "Witt " + to_string(v));
        std::map<Scalar, Scalar> terms;
        for (long k = gen::uniform(rng, 0, 4); k > 0; --k) terms[gen::rational(rng, 8, 2)] = gen::nonzero_rational(rng);
        GradedElement x(terms);
        t.check(parse_graded(to_string(x)) == x, "graded " + to_string(x));
    }
}

struct NamedSuite {
    const char* name;
    Suite run;
};

const std::vector<NamedSuite>& suites() {
    static const std::vector<NamedSuite> all{
        {"bracket-table", bracket_table}, {"series-ring", series_ring},     {"leibniz", leibniz},
        {"ld-homomorphism", ld_homomorphism}, {"ld-preimage", ld_preimage_suite}, {"weyl-order", weyl_order},
        {"jacobi", jacobi},               {"index-laws", index_laws},       {"eigen-dimension", eigen_dimension},
        {"ideal-invariants", ideal_invariants}, {"round-trip", round_trip},
    };
    return all;
}

}  // namespace

bool VerifyReport::all_passed() const {
    return !suites.empty() && std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
}

std::vector<std::string> verify_suite_names() {
    std::vector<std::string> out;
    for (const auto& s : suites()) out.emplace_back(s.name);
    return out;
}

VerifyReport run_verify(std::uint64_t seed, const std::vector<std::string>& only) {
    std::vector<std::size_t> picked;
    for (std::size_t i = 0; i < suites().size(); ++i)
        if (only.empty() || std::find(only.begin(), only.end(), suites()[i].name) != only.end()) picked.push_back(i);
    if (picked.empty()) raise(Errc::InvalidArgument, "no verify suite matches the selection");

    VerifyReport report;
    report.seed = seed;
    report.suites.resize(picked.size());
    const auto n = static_cast<long>(picked.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long k = 0; k < n; ++k) {
        const std::size_t i = picked[static_cast<std::size_t>(k)];
        SuiteResult& r = report.suites[static_cast<std::size_t>(k)];
        r.name = suites()[i].name;
        std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(i)};
        gen::Rng rng(sq);
        Tally t(r);
        try {
            suites()[i].run(rng, t);
        } catch (const std::exception& e) {
            ++r.failures;
            if (r.first_failure.empty()) r.first_failure = std::string("exception: ") + e.what();
        }
    }
    return report;
}

std::string to_text(const VerifyReport& r) {
    std::string s;
    for (const auto& suite : r.suites) {
        if (suite.passed()) {
            s += "PASS " + suite.name + " (" + std::to_string(suite.cases) + ")\n";
        } else {
            s += "FAIL " + suite.name + " (" + std::to_string(suite.failures) + "/" + std::to_string(suite.cases) +
                 "): " + suite.first_failure + "\n";
        }
    }
    return s;
}

}  // namespace wittkit
