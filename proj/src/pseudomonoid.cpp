#include "wittkit/pseudomonoid.hpp"

#include "wittkit/error.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <sstream>

namespace wittkit {

namespace {

// Hard cap on the number of elements materialised for any window.
constexpr std::size_t kMaxWindowElements = std::size_t{1} << 20;

Scalar abs_scalar(const Scalar& x) { return x < 0 ? Scalar(-x) : x; }

void sort_unique(std::vector<Scalar>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool sorted_contains(const std::vector<Scalar>& v, const Scalar& x) {
    return std::binary_search(v.begin(), v.end(), x);
}

std::vector<Scalar> negated(std::span<const Scalar> v) {
    std::vector<Scalar> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(-x);
    sort_unique(out);
    return out;
}

void check_window_size(const Scalar& count) {
    if (count > Scalar(static_cast<long>(kMaxWindowElements)))
        raise(Errc::WindowTooLarge, "window holds more than " + std::to_string(kMaxWindowElements) + " elements");
}

// Multiples k*d (d > 0) with k in [kmin, +inf) intersected with the window.
std::vector<Scalar> multiples_in(const Scalar& d, const Window& w, std::optional<long> kmin) {
    Scalar lo_k = ceil_scalar(w.lo / d);
    Scalar hi_k = floor_scalar(w.hi / d);
    if (kmin && lo_k < *kmin) lo_k = *kmin;
    std::vector<Scalar> out;
    if (lo_k > hi_k) return out;
    check_window_size(hi_k - lo_k + 1);
    for (Scalar k = lo_k; k <= hi_k; k += 1) out.push_back(k * d);
    return out;
}

bool numerical_member(long n, long m, long x) {
    if (x < 0) return false;
    for (long i = 0; i * n <= x; ++i)
        if ((x - i * n) % m == 0) return true;
    return false;
}

std::vector<Scalar> filter_window(const std::vector<Scalar>& v, const Window& w) {
    std::vector<Scalar> out;
    for (const auto& x : v)
        if (w.contains(x)) out.push_back(x);
    return out;
}

std::string join(std::span<const Scalar> v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += to_string(v[i]);
    }
    return s;
}

}  // namespace

Window::Window(Scalar lo_, Scalar hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    if (lo > hi) raise(Errc::InvalidArgument, "window with lo > hi");
}

std::vector<Scalar> distinct_sum_closure(std::span<const Scalar> seed, const Window& w) {
    std::set<Scalar> have;
    if (w.contains(0)) have.insert(0);
    for (const auto& s : seed)
        if (w.contains(s)) have.insert(s);

    // Semi-naive fixpoint: only pairs involving a fresh element can add anything new.
    std::vector<Scalar> fresh(have.begin(), have.end());
    while (!fresh.empty()) {
        std::vector<Scalar> all(have.begin(), have.end());
        std::vector<Scalar> next;
        for (const auto& a : fresh) {
            for (const auto& b : all) {
                if (a == b) continue;
                Scalar s = a + b;
                if (!w.contains(s) || have.count(s)) continue;
                have.insert(s);
                next.push_back(s);
                if (have.size() > kMaxWindowElements)
                    raise(Errc::WindowTooLarge, "closure exceeds the element cap");
            }
        }
        fresh = std::move(next);
    }
    return {have.begin(), have.end()};
}

// ---------------------------------------------------------------------------
// Construction

Pseudomonoid Pseudomonoid::integers() { return {}; }

Pseudomonoid Pseudomonoid::naturals() {
    Pseudomonoid g;
    g.kind_ = Kind::Naturals;
    return g;
}

Pseudomonoid Pseudomonoid::witt() {
    Pseudomonoid g;
    g.kind_ = Kind::Witt;
    return g;
}

Pseudomonoid Pseudomonoid::step(const Scalar& d) {
    if (d == 0) raise(Errc::InvalidArgument, "step must be nonzero");
    Pseudomonoid g;
    g.kind_ = Kind::Step;
    g.step_ = abs_scalar(d);
    return g;
}

Pseudomonoid Pseudomonoid::numerical(long n, long m) {
    if (n <= 1 || m <= 1 || std::gcd(n, m) != 1)
        raise(Errc::InvalidArgument, "numerical monoid needs coprime generators > 1");
    Pseudomonoid g;
    g.kind_ = Kind::Numerical;
    g.n_ = std::min(n, m);
    g.m_ = std::max(n, m);
    return g;
}

Pseudomonoid Pseudomonoid::finite(std::vector<Scalar> elements) {
    sort_unique(elements);
    if (!sorted_contains(elements, 0)) raise(Errc::NotAPseudomonoid, "set does not contain 0");
    for (std::size_t i = 0; i < elements.size(); ++i)
        for (std::size_t j = i + 1; j < elements.size(); ++j)
            if (!sorted_contains(elements, elements[i] + elements[j]))
                raise(Errc::NotAPseudomonoid, to_string(elements[i]) + " + " + to_string(elements[j]) +
                                                  " is missing from the set");
    Pseudomonoid g;
    g.kind_ = Kind::FiniteSet;
    g.listed_ = std::move(elements);
    return g;
}

Pseudomonoid Pseudomonoid::generated(std::vector<Scalar> generators) {
    std::erase(generators, Scalar(0));
    sort_unique(generators);
    Pseudomonoid g;
    g.kind_ = Kind::GeneratedClosure;
    g.listed_ = std::move(generators);
    return g;
}

Pseudomonoid::ClosureCase Pseudomonoid::closure_case() const {
    if (listed_.empty()) return ClosureCase::None;
    const Scalar& lo = listed_.front();
    const Scalar& hi = listed_.back();
    if (lo > 0) return ClosureCase::NonNegative;
    if (hi < 0) return ClosureCase::NonPositive;
    auto all_multiples = [&](const Scalar& d, bool positives) {
        for (const auto& x : listed_)
            if ((positives ? x > 0 : x < 0) && !is_integer(x / d)) return false;
        return true;
    };
    // listed_ is sorted, so a single negative sits at index 0 and a single positive at the end.
    if (listed_.size() < 2 || listed_[1] > 0) {
        if (all_multiples(-lo, true)) return ClosureCase::ScaledUp;
    }
    if (listed_.size() < 2 || listed_[listed_.size() - 2] < 0) {
        if (all_multiples(hi, false)) return ClosureCase::ScaledDown;
    }
    return ClosureCase::Opaque;
}

// ---------------------------------------------------------------------------
// Queries

std::optional<std::vector<Scalar>> Pseudomonoid::exact_elements() const {
    if (kind_ == Kind::FiniteSet) return listed_;
    if (kind_ != Kind::GeneratedClosure) return std::nullopt;
    switch (closure_case()) {
        case ClosureCase::None:
            return std::vector<Scalar>{0};
        case ClosureCase::NonNegative:
        case ClosureCase::NonPositive:
            if (listed_.size() == 1) {
                std::vector<Scalar> v{0, listed_[0]};
                sort_unique(v);
                return v;
            }
            return std::nullopt;
        case ClosureCase::ScaledUp: {
            const Scalar d = -listed_.front();
            if (listed_.size() == 1) return std::vector<Scalar>{-d, 0};
            if (listed_.size() == 2 && listed_[1] == d) return std::vector<Scalar>{-d, 0, d};
            return std::nullopt;
        }
        case ClosureCase::ScaledDown: {
            const Scalar d = listed_.back();
            if (listed_.size() == 1) return std::vector<Scalar>{0, d};
            if (listed_.size() == 2 && listed_[0] == -d) return std::vector<Scalar>{-d, 0, d};
            return std::nullopt;
        }
        case ClosureCase::Opaque:
            return std::nullopt;
    }
    return std::nullopt;
}

Pseudomonoid::Shape Pseudomonoid::shape() const {
    Shape s;
    if (auto e = exact_elements()) {
        s.kind = Shape::Kind::Finite;
        s.finite = std::move(*e);
        return s;
    }
    switch (kind_) {
        case Kind::Integers:
            s.kind = Shape::Kind::ScaledIntegers;
            break;
        case Kind::Step:
            s.kind = Shape::Kind::ScaledIntegers;
            s.scale = step_;
            break;
        case Kind::Naturals:
            s.kind = Shape::Kind::ScaledNaturals;
            break;
        case Kind::Witt:
            s.kind = Shape::Kind::ScaledWitt;
            break;
        case Kind::Numerical:
            s.kind = Shape::Kind::Numerical;
            s.n = n_;
            s.m = m_;
            break;
        case Kind::GeneratedClosure: {
            auto c = closure_case();
            if (c == ClosureCase::ScaledUp) {
                s.kind = Shape::Kind::ScaledWitt;
                s.scale = -listed_.front();
            } else if (c == ClosureCase::ScaledDown) {
                s.kind = Shape::Kind::ScaledWitt;
                s.scale = -listed_.back();
            }
            break;
        }
        case Kind::FiniteSet:
            break;
    }
    return s;
}

bool Pseudomonoid::membership_exact() const {
    return kind_ != Kind::GeneratedClosure || closure_case() != ClosureCase::Opaque;
}

bool Pseudomonoid::contains(const Scalar& x) const {
    switch (kind_) {
        case Kind::Integers:
            return is_integer(x);
        case Kind::Naturals:
            return is_integer(x) && x >= 0;
        case Kind::Witt:
            return is_integer(x) && x >= -1;
        case Kind::Step:
            return is_integer(x / step_);
        case Kind::Numerical:
            return is_integer(x) && x >= 0 && numerical_member(n_, m_, to_long(x));
        case Kind::FiniteSet:
            return sorted_contains(listed_, x);
        case Kind::GeneratedClosure:
            break;
    }
    if (auto e = exact_elements()) return sorted_contains(*e, x);
    switch (closure_case()) {
        case ClosureCase::NonNegative:
            if (x <= 0) return x == 0;
            return sorted_contains(distinct_sum_closure(listed_, Window(0, x)), x);
        case ClosureCase::NonPositive:
            if (x >= 0) return x == 0;
            return sorted_contains(distinct_sum_closure(negated(listed_), Window(0, -x)), -x);
        case ClosureCase::ScaledUp: {
            const Scalar d = -listed_.front();
            return is_integer(x / d) && x >= -d;
        }
        case ClosureCase::ScaledDown: {
            const Scalar d = listed_.back();
            return is_integer(x / d) && x <= d;
        }
        default: {
            // Best effort: closure on a window comfortably wider than x and the generators.
            Scalar r = abs_scalar(x);
            for (const auto& g : listed_) r += abs_scalar(g);
            r *= 4;
            return sorted_contains(distinct_sum_closure(listed_, Window(-r, r)), x);
        }
    }
}

std::optional<Scalar> Pseudomonoid::global_min() const {
    if (auto e = exact_elements()) return e->front();
    switch (kind_) {
        case Kind::Naturals:
        case Kind::Numerical:
            return Scalar(0);
        case Kind::Witt:
            return Scalar(-1);
        case Kind::GeneratedClosure:
            switch (closure_case()) {
                case ClosureCase::NonNegative:
                    return Scalar(0);
                case ClosureCase::ScaledUp:
                    return listed_.front();
                default:
                    return std::nullopt;
            }
        default:
            return std::nullopt;
    }
}

std::optional<Scalar> Pseudomonoid::global_max() const {
    if (auto e = exact_elements()) return e->back();
    if (kind_ != Kind::GeneratedClosure) return std::nullopt;
    switch (closure_case()) {
        case ClosureCase::NonPositive:
            return Scalar(0);
        case ClosureCase::ScaledDown:
            return listed_.back();
        default:
            return std::nullopt;
    }
}

std::optional<Scalar> Pseudomonoid::min_nonzero_magnitude() const {
    auto smallest = [](std::span<const Scalar> v) -> std::optional<Scalar> {
        std::optional<Scalar> best;
        for (const auto& x : v)
            if (x != 0 && (!best || abs_scalar(x) < *best)) best = abs_scalar(x);
        return best;
    };
    if (auto e = exact_elements()) return smallest(*e);
    switch (kind_) {
        case Kind::Integers:
        case Kind::Naturals:
        case Kind::Witt:
            return Scalar(1);
        case Kind::Step:
            return step_;
        case Kind::Numerical:
            return Scalar(n_);
        case Kind::GeneratedClosure:
            if (closure_case() == ClosureCase::Opaque) return std::nullopt;
            // Distinct sums of same-sign generators only grow; in the scaled
            // cases every element is a multiple of the lone opposite generator.
            if (closure_case() == ClosureCase::ScaledUp) return -listed_.front();
            if (closure_case() == ClosureCase::ScaledDown) return listed_.back();
            return smallest(listed_);
        case Kind::FiniteSet:
            break;
    }
    return std::nullopt;
}

bool Pseudomonoid::is_group() const {
    if (kind_ == Kind::Integers || kind_ == Kind::Step) return true;
    if (auto e = exact_elements()) {
        for (const auto& x : *e)
            if (!sorted_contains(*e, -x)) return false;
        return true;
    }
    return false;
}

std::string to_string(const Pseudomonoid& g) {
    using K = Pseudomonoid::Kind;
    switch (g.kind()) {
        case K::Integers:
            return "Z";
        case K::Naturals:
            return "N";
        case K::Witt:
            return "Witt";
        case K::Step:
            return "dZ:" + to_string(g.step_size());
        case K::Numerical:
            return "Mnm:" + std::to_string(g.numerical_n()) + "," + std::to_string(g.numerical_m());
        case K::FiniteSet:
            return "set:{" + join(g.listed()) + "}";
        case K::GeneratedClosure:
            return "gen:{" + join(g.listed()) + "}";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Windows

ElementWindow pm_elements(const Pseudomonoid& g, const Window& w) {
    using K = Pseudomonoid::Kind;
    ElementWindow out;
    switch (g.kind()) {
        case K::Integers:
            out.elements = multiples_in(1, w, std::nullopt);
            return out;
        case K::Naturals:
            out.elements = multiples_in(1, w, 0);
            return out;
        case K::Witt:
            out.elements = multiples_in(1, w, -1);
            return out;
        case K::Step:
            out.elements = multiples_in(g.step_size(), w, std::nullopt);
            return out;
        case K::Numerical:
            for (auto& x : multiples_in(1, w, 0))
                if (numerical_member(g.numerical_n(), g.numerical_m(), to_long(x))) out.elements.push_back(x);
            return out;
        case K::FiniteSet:
            out.elements = filter_window(g.listed(), w);
            return out;
        case K::GeneratedClosure:
            break;
    }

    if (auto e = g.exact_elements()) {
        out.elements = filter_window(*e, w);
        return out;
    }
    const auto& gens = g.listed();
    if (gens.front() > 0) {
        if (w.hi >= 0) out.elements = filter_window(distinct_sum_closure(gens, Window(0, w.hi)), w);
        return out;
    }
    if (gens.back() < 0) {
        if (w.lo <= 0) out.elements = filter_window(negated(distinct_sum_closure(negated(gens), Window(0, -w.lo))), w);
        return out;
    }
    if (g.membership_exact()) {
        // Closed forms d*{-1, 0, 1, ...} or its mirror image.
        auto s = g.shape();
        const Scalar d = abs_scalar(s.scale);
        if (s.scale > 0) {
            out.elements = multiples_in(d, w, -1);
        } else {
            Window flipped(-w.hi, -w.lo);
            out.elements = negated(multiples_in(d, flipped, -1));
        }
        return out;
    }

    // Mixed signs without a closed form: sums may leave the window and come
    // back, so explore a padded window and report the result as partial.
    Scalar pad = 0;
    for (const auto& x : gens) pad += abs_scalar(x);
    out.elements = filter_window(distinct_sum_closure(gens, Window(w.lo - pad, w.hi + pad)), w);
    out.complete = false;
    return out;
}

namespace {

void require_subset(std::span<const Scalar> s, const std::vector<Scalar>& elems) {
    for (const auto& x : s)
        if (!sorted_contains(elems, x)) raise(Errc::SubsetNotInG, to_string(x) + " is not in the G-window");
}

}  // namespace

bool is_closed_subset(std::span<const Scalar> s, const Pseudomonoid& g, const Window& w) {
    auto elems = pm_elements(g, w).elements;
    require_subset(s, elems);
    std::vector<Scalar> set(s.begin(), s.end());
    sort_unique(set);
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j) {
            Scalar sum = set[i] + set[j];
            if (w.contains(sum) && !sorted_contains(set, sum)) return false;
        }
    return true;
}

bool is_ideal_subset(std::span<const Scalar> ideal, const Pseudomonoid& g, const Window& w) {
    auto elems = pm_elements(g, w).elements;
    require_subset(ideal, elems);
    std::vector<Scalar> set(ideal.begin(), ideal.end());
    sort_unique(set);
    for (const auto& a : set) {
        for (const auto& b : pm_elements(g, Window(w.lo - a, w.hi - a)).elements) {
            if (b == a) continue;
            if (!sorted_contains(set, a + b)) return false;
        }
    }
    return true;
}

namespace {

// Whether `ideal` together with every element of G above the window is an ideal of G.
// Needs a known minimum L inside the window; then only a in (hi, hi - L] can push a
// sum back into the window, since sums of distinct elements stay in G and hence >= L.
bool extends_upward(const Pseudomonoid& g, const Window& w, const std::vector<Scalar>& ideal) {
    if (!g.membership_exact()) return false;
    auto low = g.global_min();
    if (!low || *low < w.lo) return false;
    if (*low >= 0) return true;
    for (const auto& a : pm_elements(g, Window(w.hi, w.hi - *low)).elements) {
        if (a == w.hi) continue;
        for (const auto& b : pm_elements(g, Window(*low, w.hi - a)).elements) {
            if (b != a && !sorted_contains(ideal, a + b)) return false;
        }
    }
    return true;
}

}  // namespace

std::vector<IdealSubset> enumerate_ideal_subsets(const Pseudomonoid& g, const Window& w) {
    const auto elems = pm_elements(g, w).elements;
    const std::size_t n = elems.size();
    if (n > kMaxIdealWindow)
        raise(Errc::WindowTooLarge, "ideal enumeration is capped at " + std::to_string(kMaxIdealWindow) +
                                        " window elements, got " + std::to_string(n));

    auto index_of = [&](const Scalar& x) {
        return static_cast<std::size_t>(std::lower_bound(elems.begin(), elems.end(), x) - elems.begin());
    };

    // reach[i]: everything forced into an ideal once elems[i] is in it.
    std::vector<std::uint32_t> reach(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Scalar& a = elems[i];
        reach[i] = std::uint32_t{1} << i;
        for (const auto& b : pm_elements(g, Window(w.lo - a, w.hi - a)).elements)
            if (b != a) reach[i] |= std::uint32_t{1} << index_of(a + b);
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint32_t acc = reach[i];
            for (std::size_t j = 0; j < n; ++j)
                if (acc >> j & 1) acc |= reach[j];
            if (acc != reach[i]) {
                reach[i] = acc;
                changed = true;
            }
        }
    }

    // Decide each element in turn; including one pulls in its whole reach, and
    // a conflict with an earlier exclusion prunes the branch.
    std::vector<std::uint32_t> found;
    auto search = [&](auto&& self, std::size_t i, std::uint32_t in, std::uint32_t out) -> void {
        if (i == n) {
            found.push_back(in);
            return;
        }
        const std::uint32_t bit = std::uint32_t{1} << i;
        if (in & bit) {
            self(self, i + 1, in, out);
            return;
        }
        self(self, i + 1, in, out | bit);
        const std::uint32_t grown = in | reach[i];
        if (!(grown & out)) self(self, i + 1, grown, out);
    };
    search(search, 0, 0, 0);
    std::sort(found.begin(), found.end());

    const std::uint32_t full = n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
    std::vector<IdealSubset> result;
    result.reserve(found.size());
    for (auto mask : found) {
        IdealSubset s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) s.elements.push_back(elems[i]);
        s.extendable = mask == 0 || mask == full || extends_upward(g, w, s.elements);
        result.push_back(std::move(s));
    }
    return result;
}

// ---------------------------------------------------------------------------
// Verdicts

std::string_view verdict_name(Verdict::Kind k) {
    switch (k) {
        case Verdict::Kind::Yes:
            return "yes";
        case Verdict::Kind::No:
            return "no";
        case Verdict::Kind::Unknown:
            return "unknown";
    }
    return "unknown";
}

namespace {

Verdict yes(std::string reason, bool complete) {
    return {Verdict::Kind::Yes, std::move(reason), std::nullopt, std::nullopt, complete};
}
Verdict no(std::string reason, bool complete) {
    return {Verdict::Kind::No, std::move(reason), std::nullopt, std::nullopt, complete};
}
Verdict unknown(std::string reason) { return {Verdict::Kind::Unknown, std::move(reason), std::nullopt, std::nullopt, false}; }

std::string window_text(const Window& w) { return "[" + to_string(w.lo) + ", " + to_string(w.hi) + "]"; }

}  // namespace

Verdict simplicity_verdict(const Pseudomonoid& g, const Window& w) {
    if (g.is_group()) return yes("group", true);

    // d*{-1, 0, 1, ...}: adding -d repeatedly walks any member of a nonempty ideal
    // down to -d, then -d + d = 0, and an ideal holding 0 is everything.
    if (g.shape().kind == Pseudomonoid::Shape::Kind::ScaledWitt) return yes("exhaustive", true);

    std::vector<IdealSubset> ideals;
    try {
        ideals = enumerate_ideal_subsets(g, w);
    } catch (const Error& e) {
        if (e.code() != Errc::WindowTooLarge) throw;
        return unknown(e.what());
    }
    const auto full_size = pm_elements(g, w).elements.size();
    const IdealSubset* witness = nullptr;
    bool nontrivial = false;
    for (const auto& s : ideals) {
        if (s.elements.empty() || s.elements.size() == full_size) continue;
        nontrivial = true;
        if (s.extendable && (!witness || s.elements.size() > witness->elements.size())) witness = &s;
    }
    if (witness) {
        Verdict v = no("nontrivial ideal subset", true);
        v.ideal = witness->elements;
        return v;
    }
    if (!nontrivial) {
        if (auto e = g.exact_elements(); e && w.contains(e->front()) && w.contains(e->back()))
            return yes("exhaustive", true);
    }
    return unknown(nontrivial ? "nontrivial window ideals do not extend provably"
                              : "no nontrivial ideal inside " + window_text(w));
}

namespace {

struct Candidate {
    long p;
    long q;
};

// a = p/q ordered by height, then denominator, then |p|, positive first.
std::vector<Scalar> candidate_scalars(long bound) {
    std::vector<Candidate> cs;
    for (long q = 1; q <= bound; ++q)
        for (long p = -bound; p <= bound; ++p)
            if (p != 0 && std::gcd(p, q) == 1 && !(p == q)) cs.push_back({p, q});
    std::sort(cs.begin(), cs.end(), [](const Candidate& a, const Candidate& b) {
        auto key = [](const Candidate& c) {
            long ap = c.p < 0 ? -c.p : c.p;
            return std::tuple(std::max(ap, c.q), c.q, ap, c.p < 0);
        };
        return key(a) < key(b);
    });
    std::vector<Scalar> out;
    for (const auto& c : cs) out.push_back(make_scalar(c.p, c.q));
    return out;
}

}  // namespace

Verdict is_self_containing(const Pseudomonoid& g, long search_bound) {
    using SK = Pseudomonoid::Shape::Kind;
    auto s = g.shape();
    auto exact_yes = [](const Scalar& missing) {
        Verdict v = yes("2G is a proper subset; missing " + to_string(missing), true);
        v.scalar = Scalar(2);
        return v;
    };
    switch (s.kind) {
        case SK::ScaledIntegers:
        case SK::ScaledNaturals:
            return exact_yes(abs_scalar(s.scale));
        case SK::Numerical:
            return exact_yes(Scalar(s.n));
        case SK::ScaledWitt:
            // aG in G puts a = a*1 in G; a > 0 is forced by the unique negative element,
            // and then a*(-1) = -a must be -1, so aG = G.
            return no("unit-forcing", true);
        case SK::Finite:
            // x -> a x is injective, so aG in G forces aG = G for finite G.
            return no("finite", true);
        case SK::Opaque:
            break;
    }

    Scalar r = 1;
    for (const auto& x : g.listed())
        if (abs_scalar(x) > r) r = abs_scalar(x);
    r *= 4;
    const Window val(-r, r);
    const auto elems = pm_elements(g, val).elements;
    for (const auto& a : candidate_scalars(search_bound)) {
        bool inside = std::all_of(elems.begin(), elems.end(), [&](const Scalar& x) { return g.contains(a * x); });
        if (!inside) continue;
        for (const auto& y : elems) {
            if (!g.contains(y / a)) {
                Verdict v = yes("validated on " + window_text(val) + "; missing " + to_string(y), false);
                v.scalar = a;
                return v;
            }
        }
    }
    return unknown("no scalar with height <= " + std::to_string(search_bound) + " validated on " + window_text(val));
}

namespace {

// G1 = k * G2 for the closed-form shapes.
bool exact_equivalent(const Pseudomonoid::Shape& s1, const Pseudomonoid::Shape& s2, const Scalar& k) {
    using SK = Pseudomonoid::Shape::Kind;
    if (s1.kind != s2.kind || s1.kind == SK::Opaque) return false;
    switch (s1.kind) {
        case SK::Finite: {
            std::vector<Scalar> scaled;
            for (const auto& x : s2.finite) scaled.push_back(k * x);
            sort_unique(scaled);
            return scaled == s1.finite;
        }
        case SK::ScaledIntegers:
            return abs_scalar(s1.scale) == abs_scalar(k * s2.scale);
        case SK::ScaledNaturals:
        case SK::ScaledWitt:
            return s1.scale == k * s2.scale;
        case SK::Numerical:
            return k == 1 && s1.n == s2.n && s1.m == s2.m;
        case SK::Opaque:
            break;
    }
    return false;
}

std::optional<Scalar> min_magnitude(const std::vector<Scalar>& v) {
    std::optional<Scalar> best;
    for (const auto& x : v)
        if (x != 0 && (!best || abs_scalar(x) < *best)) best = abs_scalar(x);
    return best;
}

}  // namespace

Verdict equivalence_test(const Pseudomonoid& g1, const Pseudomonoid& g2, const Window& w) {
    const auto e1 = pm_elements(g1, w).elements;
    const auto e2 = pm_elements(g2, w).elements;
    const auto m1 = min_magnitude(e1);
    const auto m2 = min_magnitude(e2);

    if (!m1 && !m2) {
        auto x1 = g1.exact_elements();
        auto x2 = g2.exact_elements();
        if (x1 && x2 && x1->size() == 1 && x2->size() == 1) {
            Verdict v = yes("both are {0}", true);
            v.scalar = Scalar(1);
            return v;
        }
        return unknown("both are {0} inside " + window_text(w));
    }
    if (!m1 || !m2) {
        const auto& trivial = m1 ? g2 : g1;
        auto x = trivial.exact_elements();
        return no("only one side has nonzero elements inside " + window_text(w), x && x->size() == 1);
    }

    std::string counter;
    const Scalar ratio = *m1 / *m2;
    for (const Scalar& k : {ratio, Scalar(-ratio)}) {
        // Test G1 = k * G2 on the window: both inclusions.
        std::optional<Scalar> bad;
        for (const auto& x : e1)
            if (!g2.contains(x / k)) {
                bad = x;
                break;
            }
        if (!bad) {
            Window pulled = k > 0 ? Window(w.lo / k, w.hi / k) : Window(w.hi / k, w.lo / k);
            for (const auto& y : pm_elements(g2, pulled).elements)
                if (!g1.contains(k * y)) {
                    bad = k * y;
                    break;
                }
        }
        if (!bad) {
            // Report the scalar with |k| >= 1 and say which side it scales.
            Verdict v;
            v.kind = Verdict::Kind::Yes;
            if (abs_scalar(k) >= 1) {
                v.scalar = k;
                v.reason = "G1 = k*G2";
            } else {
                v.scalar = Scalar(1 / k);
                v.reason = "G2 = k*G1";
            }
            v.complete = exact_equivalent(g1.shape(), g2.shape(), k);
            return v;
        }
        if (!counter.empty()) counter += "; ";
        counter += "k = " + to_string(k) + " fails at " + to_string(*bad);
    }
    const bool certified = g1.membership_exact() && g2.membership_exact() && g1.min_nonzero_magnitude() == m1 &&
                           g2.min_nonzero_magnitude() == m2;
    return no(counter, certified);
}

Extremes extreme_elements(const Pseudomonoid& g, const Window& w, OrderChoice ord) {
    const auto elems = pm_elements(g, w).elements;
    Extremes out;
    if (elems.empty()) return out;
    const auto lo = g.global_min();
    const auto hi = g.global_max();
    const bool lo_cert = lo && *lo == elems.front();
    const bool hi_cert = hi && *hi == elems.back();
    if (ord == OrderChoice::Ascending) {
        out.min = elems.front();
        out.max = elems.back();
        out.min_certified = lo_cert;
        out.max_certified = hi_cert;
    } else {
        out.min = elems.back();
        out.max = elems.front();
        out.min_certified = hi_cert;
        out.max_certified = lo_cert;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

Scalar scalar_or_throw(std::string_view text, std::string_view what) {
    auto s = parse_scalar(text);
    if (!s) raise(Errc::ParseError, "bad " + std::string(what) + " '" + std::string(text) + "'");
    return *s;
}

std::vector<Scalar> parse_braced(std::string_view text) {
    if (text.size() < 2 || text.front() != '{' || text.back() != '}')
        raise(Errc::ParseError, "expected {a,b,...}, got '" + std::string(text) + "'");
    text = text.substr(1, text.size() - 2);
    std::vector<Scalar> out;
    while (!text.empty()) {
        auto comma = text.find(',');
        auto item = text.substr(0, comma);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        out.push_back(scalar_or_throw(item, "element"));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace

Pseudomonoid parse_pseudomonoid(std::string_view text) {
    if (text == "Z") return Pseudomonoid::integers();
    if (text == "N") return Pseudomonoid::naturals();
    if (text == "Witt") return Pseudomonoid::witt();
    if (text.starts_with("dZ:")) return Pseudomonoid::step(scalar_or_throw(text.substr(3), "step"));
    if (text.starts_with("Mnm:")) {
        auto rest = text.substr(4);
        auto comma = rest.find(',');
        if (comma == std::string_view::npos) raise(Errc::ParseError, "expected Mnm:<n>,<m>");
        Scalar n = scalar_or_throw(rest.substr(0, comma), "n");
        Scalar m = scalar_or_throw(rest.substr(comma + 1), "m");
        if (!is_integer(n) || !is_integer(m)) raise(Errc::ParseError, "Mnm needs integers");
        return Pseudomonoid::numerical(to_long(n), to_long(m));
    }
    if (text.starts_with("set:")) return Pseudomonoid::finite(parse_braced(text.substr(4)));
    if (text.starts_with("gen:")) return Pseudomonoid::generated(parse_braced(text.substr(4)));
    raise(Errc::ParseError, "unknown pseudomonoid '" + std::string(text) + "'");
}

Window parse_window(std::string_view text) {
    // Split at the colon that follows the first scalar; a leading '-' is part of lo.
    auto colon = text.find(':');
    if (colon == std::string_view::npos) raise(Errc::ParseError, "expected lo:hi, got '" + std::string(text) + "'");
    return Window(scalar_or_throw(text.substr(0, colon), "window bound"),
                  scalar_or_throw(text.substr(colon + 1), "window bound"));
}

}  // namespace wittkit
