#pragma once

#include "wittkit/scalar.hpp"

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace wittkit {

// Working precision (in terms) for results that are genuinely infinite series,
// e.g. the inverse of 1 - x or e^x.
inline constexpr long kDefaultPrecision = 32;

/// Weierstrass degree of a series: the lowest exponent carrying a nonzero
/// coefficient. A truncated series that vanishes on its whole known range only
/// tells us W >= prec; the exact zero has W = infinity.
struct DegreeVerdict {
    enum class Kind { Known, AtLeast, Infinite };
    Kind kind = Kind::Infinite;
    Exponent value = 0;

    static DegreeVerdict known(Exponent v) { return {Kind::Known, v}; }
    static DegreeVerdict at_least(Exponent v) { return {Kind::AtLeast, v}; }
    static DegreeVerdict infinite() { return {Kind::Infinite, 0}; }

    bool operator==(const DegreeVerdict&) const = default;
};

/// Formal Laurent series with exact rational coefficients.
///
/// Two regimes share the type. An EXACT series is a Laurent polynomial: every
/// coefficient outside the stored range is exactly zero. A truncated series
/// carries a precision p and says nothing about exponents >= p; its stored
/// range always runs from the lead up to p - 1 (trailing zeros are kept).
/// Leading zeros are stripped eagerly, so a nonzero series always has a
/// nonzero first stored coefficient and lead() is its Weierstrass degree.
class LaurentSeries {
public:
    LaurentSeries() = default;

    static LaurentSeries exact(Exponent lead, std::vector<Scalar> coeffs);
    static LaurentSeries truncated(Exponent lead, std::vector<Scalar> coeffs, Exponent prec);
    static LaurentSeries monomial(const Scalar& c, Exponent e);
    static LaurentSeries constant(const Scalar& c);
    static LaurentSeries variable();
    // Zero known on all exponents below prec, i.e. O(x^prec).
    static LaurentSeries big_o(Exponent prec);

    bool is_exact() const noexcept { return !prec_.has_value(); }
    std::optional<Exponent> precision() const noexcept { return prec_; }

    // Zero on the whole known range.
    bool is_zero() const noexcept { return coeffs_.empty(); }

    // For a nonzero series the Weierstrass degree. The truncated zero reports
    // its precision and the exact zero reports 0.
    Exponent lead() const noexcept { return lead_; }

    // One past the last stored exponent.
    Exponent end() const noexcept { return lead_ + static_cast<Exponent>(coeffs_.size()); }

    std::span<const Scalar> coefficients() const noexcept { return coeffs_; }

    bool is_known(Exponent e) const noexcept { return !prec_ || e < *prec_; }

    // Coefficient at exponent e; throws Undecidable when e is past the precision.
    Scalar coeff(Exponent e) const;

    std::size_t nonzero_terms() const;

    // Exact constant (EXACT with support in {0}).
    bool is_constant() const;

    LaurentSeries truncate(Exponent prec) const;

    LaurentSeries operator-() const;

    bool operator==(const LaurentSeries&) const = default;

private:
    LaurentSeries(Exponent lead, std::vector<Scalar> coeffs, std::optional<Exponent> prec);
    void canonicalize();

    Exponent lead_ = 0;
    std::vector<Scalar> coeffs_;
    std::optional<Exponent> prec_;
};

LaurentSeries operator+(const LaurentSeries& f, const LaurentSeries& g);
LaurentSeries operator-(const LaurentSeries& f, const LaurentSeries& g);
LaurentSeries operator*(const LaurentSeries& f, const LaurentSeries& g);
LaurentSeries operator*(const Scalar& c, const LaurentSeries& f);

LaurentSeries add(const LaurentSeries& f, const LaurentSeries& g);
LaurentSeries mul(const LaurentSeries& f, const LaurentSeries& g);
LaurentSeries scale(const LaurentSeries& f, const Scalar& c);

// Multiplication by x^k.
LaurentSeries shift(const LaurentSeries& f, Exponent k);

/// Multiplicative inverse. EXACT monomials invert exactly; any other EXACT
/// input yields `terms` terms of the inverse. Truncated inputs keep their
/// relative precision, so prec(result) = prec(f) - 2 W(f).
LaurentSeries inverse(const LaurentSeries& f, long terms = kDefaultPrecision);

LaurentSeries derivative(const LaurentSeries& f);

// Termwise antiderivative with zero constant term. Defined for any series
// whose residue is known to vanish.
LaurentSeries integrate(const LaurentSeries& f);

/// g o f, evaluated by Horner accumulation. Requires W(g) >= 0 and W(f) >= 1.
LaurentSeries compose(const LaurentSeries& g, const LaurentSeries& f);

// The truncated exponential series sum_{i < terms} x^i / i!.
LaurentSeries exp_series(long terms);

/// e^{\int g}: the unit u with u(0) = 1 and u' = g u. Requires W(g) >= 0.
LaurentSeries exp_integral(const LaurentSeries& g, long terms = kDefaultPrecision);

LaurentSeries log_derivative(const LaurentSeries& f, long terms = kDefaultPrecision);

DegreeVerdict weierstrass_degree(const LaurentSeries& f);

Scalar residue(const LaurentSeries& f);

// f and g agree on every exponent known for both.
bool equal_to_precision(const LaurentSeries& f, const LaurentSeries& g);

// The derivative vanishes on its known range.
bool is_constant_to_precision(const LaurentSeries& f);

enum class NoPreimageReason { DegreeTooLow, NonIntegerResidue };

struct LdCaseA {
    LaurentSeries witness;
};
struct LdCaseB {
    LaurentSeries witness;
    long residue = 0;
};
struct LdNoPreimage {
    NoPreimageReason reason;
};

using LdPreimageResult = std::variant<LdCaseA, LdCaseB, LdNoPreimage>;

/// Decides whether g lies in the image of the logarithmic derivative and, when
/// it does, constructs a witness w with LD(w) = g to precision.
LdPreimageResult ld_preimage(const LaurentSeries& g, long terms = kDefaultPrecision);

std::string to_string(const LaurentSeries& f);

// Cauchy-product kernels: out[k] = sum_i a[i] b[k - i] for k < count.
namespace kernels {
std::vector<Scalar> cauchy_product_serial(std::span<const Scalar> a, std::span<const Scalar> b,
                                          std::size_t count);
std::vector<Scalar> cauchy_product_omp(std::span<const Scalar> a, std::span<const Scalar> b,
                                       std::size_t count);
}  // namespace kernels

// Reference implementations kept for cross-checking the parallel paths.
namespace serial {
LaurentSeries mul(const LaurentSeries& f, const LaurentSeries& g);
}

}  // namespace wittkit
