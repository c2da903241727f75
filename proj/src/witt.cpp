#include "wittkit/witt.hpp"

#include <sstream>

namespace wittkit {

WittElement operator+(const WittElement& a, const WittElement& b) { return WittElement(a.coeff() + b.coeff()); }

WittElement operator-(const WittElement& a, const WittElement& b) { return WittElement(a.coeff() - b.coeff()); }

WittElement operator*(const Scalar& c, const WittElement& a) { return WittElement(scale(a.coeff(), c)); }

WittElement witt_bracket(const WittElement& a, const WittElement& b) {
    const LaurentSeries& f = a.coeff();
    const LaurentSeries& g = b.coeff();
    return WittElement(f * derivative(g) - g * derivative(f));
}

bool centralizer_test(const WittElement& a, const WittElement& b) {
    if (a.is_zero()) raise(Errc::InvalidArgument, "centralizer test needs a nonzero first argument");
    if (!witt_bracket(a, b).is_zero()) return false;
    if (a.coeff().is_exact() && b.coeff().is_exact() && !b.is_zero()) {
        const Scalar ratio = b.coeff().coefficients().front() / a.coeff().coefficients().front();
        if (!(b.coeff() - scale(a.coeff(), ratio)).is_zero())
            raise(Errc::Internal, "commuting elements " + to_string(a) + " and " + to_string(b) +
                                      " are not proportional");
    }
    return true;
}

WeylElement to_weyl(const WittElement& a) { return WeylElement::term(a.coeff(), 1); }

WittElement eigenvector_candidate(const LaurentSeries& f, const Scalar& a, long prec) {
    if (f.is_zero()) raise(Errc::InvalidArgument, "eigenvector_candidate needs a nonzero f");
    if (a == 0) return WittElement(f);
    const Exponent w = f.lead();
    if (w > 1)
        raise(Errc::NoEigenvector, "W(f) = " + std::to_string(w) + " > 1: only eigenvalue 0 occurs");
    if (w <= 0) {
        const LaurentSeries ratio = scale(inverse(f, prec), a);
        return WittElement(f * exp_integral(ratio, prec));
    }
    const Scalar slope = f.coeff(1);
    const Scalar n_scalar = a / slope;
    if (!is_integer(n_scalar))
        raise(Errc::NotIntegerMultiple, to_string(a) + " is not an integer multiple of f'(0) = " + to_string(slope));
    const long n = to_long(n_scalar);
    const LaurentSeries x = LaurentSeries::variable();
    const LaurentSeries numer = scale(scale(x, slope) - f, n_scalar);
    const LaurentSeries inner = numer * inverse(f * x, prec);
    if (!inner.is_zero() && inner.lead() < 0)
        raise(Errc::Internal, "inner series " + to_string(inner) + " has negative Weierstrass degree");
    return WittElement(shift(f * exp_integral(inner, prec), n));
}

std::string_view algebra_name(StableAlgebra alg) {
    switch (alg) {
    case StableAlgebra::Poly: return "poly";
    case StableAlgebra::LaurentPoly: return "laurent";
    case StableAlgebra::PowerSeries: return "power";
    case StableAlgebra::FractionField: return "fraction";
    }
    return "?";
}

std::optional<StableAlgebra> parse_algebra(std::string_view name) {
    for (auto alg : {StableAlgebra::Poly, StableAlgebra::LaurentPoly, StableAlgebra::PowerSeries,
                     StableAlgebra::FractionField})
        if (algebra_name(alg) == name) return alg;
    return std::nullopt;
}

MembershipVerdict membership(const LaurentSeries& f, StableAlgebra alg, long degree_bound) {
    if (alg == StableAlgebra::FractionField) return MembershipVerdict::yes_exact();
    if (f.is_exact() && f.is_zero()) return MembershipVerdict::yes_exact();
    const bool truncated = !f.is_exact();
    const Exponent prec = f.precision().value_or(0);

    switch (alg) {
    case StableAlgebra::PowerSeries:
        if (!f.is_zero() && f.lead() < 0) return MembershipVerdict::no(f.lead());
        // A known nonnegative lead settles membership whatever the unknown tail is.
        if (truncated && f.is_zero() && prec < 0) return MembershipVerdict::yes_within(degree_bound, prec);
        return MembershipVerdict::yes_exact();
    case StableAlgebra::Poly:
        if (!f.is_zero() && f.lead() < 0) return MembershipVerdict::no(f.lead());
        if (!truncated) return MembershipVerdict::yes_exact();
        for (Exponent e = std::max<Exponent>(f.lead(), degree_bound + 1); e < f.end(); ++e)
            if (f.coeff(e) != 0) return MembershipVerdict::no(e);
        return MembershipVerdict::yes_within(degree_bound, prec);
    case StableAlgebra::LaurentPoly:
        if (!truncated) return MembershipVerdict::yes_exact();
        for (Exponent e = f.lead(); e < f.end(); ++e)
            if ((e > degree_bound || e < -degree_bound) && f.coeff(e) != 0) return MembershipVerdict::no(e);
        return MembershipVerdict::yes_within(degree_bound, prec);
    case StableAlgebra::FractionField: break;
    }
    return MembershipVerdict::yes_exact();
}

std::string to_string(const MembershipVerdict& v) {
    switch (v.kind) {
    case MembershipVerdict::Kind::No: return "No(" + std::to_string(v.witness_exponent) + ")";
    case MembershipVerdict::Kind::YesWithinBounds:
        return "YesWithinBounds(" + std::to_string(v.degree_bound) + ", " + std::to_string(v.prec) + ")";
    case MembershipVerdict::Kind::YesExact: return "YesExact";
    }
    return "?";
}

SpectrumClassification spectrum_classify(const LaurentSeries& f) {
    if (f.is_zero()) raise(Errc::InvalidArgument, "spectrum_classify needs a nonzero f with known lead");
    if (f.lead() > 1) return {SpectrumClassification::Kind::TrivialSpectrum, Scalar(0)};
    if (f.lead() <= 0) return {SpectrumClassification::Kind::AllScalars, Scalar(0)};
    return {SpectrumClassification::Kind::IntegerMultiples, f.coeff(1)};
}

std::vector<SpectrumEntry> spectrum_in_algebra(const LaurentSeries& f, StableAlgebra alg,
                                               const std::vector<Scalar>& candidates, long degree_bound,
                                               long prec) {
    std::vector<SpectrumEntry> out;
    out.reserve(candidates.size());
    for (const Scalar& a : candidates) {
        try {
            WittElement v = eigenvector_candidate(f, a, prec);
            out.push_back({a, membership(v.coeff(), alg, degree_bound), v});
        } catch (const Error& e) {
            if (e.code() != Errc::NoEigenvector && e.code() != Errc::NotIntegerMultiple) throw;
            out.push_back({a, e.code(), std::nullopt});
        }
    }
    return out;
}

std::string to_string(const WittElement& a) { return detail::operator_to_string({LaurentSeries{}, a.coeff()}); }

}  // namespace wittkit
