#pragma once

#include "wittkit/error.hpp"
#include "wittkit/series.hpp"
#include "wittkit/weyl.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace wittkit {

// f D, an element of the Witt algebra. The coefficient may be truncated.
class WittElement {
public:
    WittElement() = default;
    explicit WittElement(LaurentSeries f) : coeff_(std::move(f)) {}

    const LaurentSeries& coeff() const noexcept { return coeff_; }
    bool is_zero() const noexcept { return coeff_.is_zero(); }

    bool operator==(const WittElement&) const = default;

private:
    LaurentSeries coeff_;
};

WittElement operator+(const WittElement& a, const WittElement& b);
WittElement operator-(const WittElement& a, const WittElement& b);
WittElement operator*(const Scalar& c, const WittElement& a);

// [f D, g D] = (f g' - g f') D
WittElement witt_bracket(const WittElement& a, const WittElement& b);

/// True when [a, b] vanishes to common precision. For exact inputs the result
/// is cross-checked: b must then be a scalar multiple of a.
bool centralizer_test(const WittElement& a, const WittElement& b);

// Order-one Weyl element with the same coefficient; requires an exact coefficient.
WeylElement to_weyl(const WittElement& a);

/// An eigenvector g D of ad(f D) with eigenvalue a, built from the
/// exponential of a formal integral:
///   W(f) <= 0:  g = f e^{\int a/f}
///   W(f) == 1:  g = f x^N e^{\int N(f'(0) x - f)/(f x)},  a = N f'(0)
///   a == 0:     g = f
/// Throws NoEigenvector when W(f) > 1 and a != 0, NotIntegerMultiple when
/// W(f) == 1 and a / f'(0) is not an integer.
WittElement eigenvector_candidate(const LaurentSeries& f, const Scalar& a, long prec = kDefaultPrecision);

enum class StableAlgebra { Poly, LaurentPoly, PowerSeries, FractionField };

std::string_view algebra_name(StableAlgebra alg);
std::optional<StableAlgebra> parse_algebra(std::string_view name);

// Membership of a (possibly truncated) series in one of the catalogued
// algebras. No carries a decisive witness; YesWithinBounds is a bounded
// semi-decision only.
struct MembershipVerdict {
    enum class Kind { No, YesWithinBounds, YesExact };
    Kind kind = Kind::YesExact;
    Exponent witness_exponent = 0;  // No
    long degree_bound = 0;          // YesWithinBounds
    Exponent prec = 0;              // YesWithinBounds

    static MembershipVerdict no(Exponent e) { return {Kind::No, e, 0, 0}; }
    static MembershipVerdict yes_within(long bound, Exponent prec) { return {Kind::YesWithinBounds, 0, bound, prec}; }
    static MembershipVerdict yes_exact() { return {}; }

    bool is_yes() const noexcept { return kind != Kind::No; }
    bool operator==(const MembershipVerdict&) const = default;
};

MembershipVerdict membership(const LaurentSeries& f, StableAlgebra alg, long degree_bound);

std::string to_string(const MembershipVerdict& v);

struct SpectrumClassification {
    enum class Kind { TrivialSpectrum, AllScalars, IntegerMultiples };
    Kind kind = Kind::AllScalars;
    Scalar step;  // f'(0) for IntegerMultiples

    bool operator==(const SpectrumClassification&) const = default;
};

// Spectrum of ad(f D) over the fraction field, by the Weierstrass degree of f.
SpectrumClassification spectrum_classify(const LaurentSeries& f);

struct SpectrumEntry {
    Scalar eigenvalue;
    // Membership of the eigenvector, or the reason no eigenvector exists.
    std::variant<MembershipVerdict, Errc> outcome;
    std::optional<WittElement> eigenvector;
};

std::vector<SpectrumEntry> spectrum_in_algebra(const LaurentSeries& f, StableAlgebra alg,
                                               const std::vector<Scalar>& candidates, long degree_bound,
                                               long prec = kDefaultPrecision);

std::string to_string(const WittElement& a);

}  // namespace wittkit
