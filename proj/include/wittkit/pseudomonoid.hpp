#pragma once

#include "wittkit/scalar.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wittkit {

// Closed interval [lo, hi] of rationals; every infinite pseudomonoid is
// inspected through one of these.
struct Window {
    Scalar lo;
    Scalar hi;

    Window(Scalar lo_, Scalar hi_);
    bool contains(const Scalar& x) const { return lo <= x && x <= hi; }
    bool operator==(const Window&) const = default;
};

enum class OrderChoice { Ascending, Descending };

/// A subset G of Q containing 0 and closed under sums of distinct elements.
///
/// Builtins are described exactly. A FiniteSet is validated on construction.
/// A GeneratedClosure is the smallest pseudomonoid containing its generators;
/// membership is decided exactly when the generators are all of one sign, or
/// when there is a single negative generator -d and every positive generator
/// is a multiple of d (the closure is then known in closed form). Other
/// generator sets are only explored inside windows.
class Pseudomonoid {
public:
    enum class Kind { FiniteSet, GeneratedClosure, Integers, Naturals, Witt, Step, Numerical };

    static Pseudomonoid integers();
    static Pseudomonoid naturals();
    static Pseudomonoid witt();
    static Pseudomonoid step(const Scalar& d);
    static Pseudomonoid numerical(long n, long m);
    static Pseudomonoid finite(std::vector<Scalar> elements);
    static Pseudomonoid generated(std::vector<Scalar> generators);

    Kind kind() const noexcept { return kind_; }
    // Elements of a FiniteSet, generators of a GeneratedClosure.
    const std::vector<Scalar>& listed() const noexcept { return listed_; }
    const Scalar& step_size() const noexcept { return step_; }
    long numerical_n() const noexcept { return n_; }
    long numerical_m() const noexcept { return m_; }

    bool contains(const Scalar& x) const;
    // contains() is a decision procedure rather than a windowed search.
    bool membership_exact() const;

    // Global extremes under the usual order of Q, when they exist and are known.
    std::optional<Scalar> global_min() const;
    std::optional<Scalar> global_max() const;
    // Smallest |x| over nonzero x in G, when known.
    std::optional<Scalar> min_nonzero_magnitude() const;
    // Every element has its negative in G.
    bool is_group() const;
    // G is finite and fully listed by exact_elements().
    std::optional<std::vector<Scalar>> exact_elements() const;

    bool operator==(const Pseudomonoid&) const = default;

    // Closed-form shape of G up to a scale factor, used by exact equivalence.
    struct Shape {
        enum class Kind { Finite, ScaledIntegers, ScaledNaturals, ScaledWitt, Numerical, Opaque };
        Kind kind = Kind::Opaque;
        Scalar scale = 1;
        std::vector<Scalar> finite;
        long n = 0;
        long m = 0;
    };
    Shape shape() const;

private:
    enum class ClosureCase { None, NonNegative, NonPositive, ScaledUp, ScaledDown, Opaque };
    ClosureCase closure_case() const;

    Kind kind_ = Kind::Integers;
    std::vector<Scalar> listed_;
    Scalar step_ = 1;
    long n_ = 0;
    long m_ = 0;
};

std::string to_string(const Pseudomonoid& g);

struct ElementWindow {
    std::vector<Scalar> elements;  // ascending
    bool complete = true;
};

/// G intersected with the window. complete is false only for generated
/// closures whose membership cannot be decided exactly.
ElementWindow pm_elements(const Pseudomonoid& g, const Window& w);

// Distinct-sum closure of `seed` inside [lo, hi]; always contains 0.
std::vector<Scalar> distinct_sum_closure(std::span<const Scalar> seed, const Window& w);

bool is_closed_subset(std::span<const Scalar> s, const Pseudomonoid& g, const Window& w);

// a + b in I for all a in I and b in G with b != a, whenever a + b lands in the window.
bool is_ideal_subset(std::span<const Scalar> ideal, const Pseudomonoid& g, const Window& w);

inline constexpr std::size_t kMaxIdealWindow = 24;

struct IdealSubset {
    std::vector<Scalar> elements;
    // The set, completed by every element of G above the window, is an ideal of G.
    bool extendable = false;
};

/// All ideal subsets of G restricted to the window, in lexicographic order of
/// their membership bitmasks. Throws WindowTooLarge beyond 24 window elements.
std::vector<IdealSubset> enumerate_ideal_subsets(const Pseudomonoid& g, const Window& w);

struct Verdict {
    enum class Kind { Yes, No, Unknown };
    Kind kind = Kind::Unknown;
    std::string reason;
    std::optional<Scalar> scalar;                // Yes(a) for self-containment and equivalence
    std::optional<std::vector<Scalar>> ideal;    // No(I) for simplicity
    // The verdict holds for G itself, not only inside the window.
    bool complete = false;
};

std::string_view verdict_name(Verdict::Kind k);

Verdict simplicity_verdict(const Pseudomonoid& g, const Window& w);
Verdict is_self_containing(const Pseudomonoid& g, long search_bound);
Verdict equivalence_test(const Pseudomonoid& g1, const Pseudomonoid& g2, const Window& w);

struct Extremes {
    std::optional<Scalar> min;  // least window element under the order
    std::optional<Scalar> max;
    bool min_certified = false;  // also extreme in all of G
    bool max_certified = false;
};

Extremes extreme_elements(const Pseudomonoid& g, const Window& w, OrderChoice ord);

// CLI names: Z, N, Witt, dZ:<d>, Mnm:<n>,<m>, set:{a,b,c}, gen:{a,b,c}
Pseudomonoid parse_pseudomonoid(std::string_view text);
// "lo:hi"
Window parse_window(std::string_view text);

}  // namespace wittkit
