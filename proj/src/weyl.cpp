#include "wittkit/weyl.hpp"

#include "wittkit/error.hpp"

#include <algorithm>
#include <sstream>

namespace wittkit {

namespace detail {

void trim_operator(std::vector<LaurentSeries>& coeffs) {
    // A truncated zero coefficient still carries information, so only exact zeros go.
    while (!coeffs.empty() && coeffs.back().is_zero() && coeffs.back().is_exact()) coeffs.pop_back();
}

std::vector<LaurentSeries> operator_sum(const std::vector<LaurentSeries>& a, const std::vector<LaurentSeries>& b) {
    std::vector<LaurentSeries> out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i < a.size()) out[i] = out[i] + a[i];
        if (i < b.size()) out[i] = out[i] + b[i];
    }
    trim_operator(out);
    return out;
}

std::vector<LaurentSeries> operator_product(const std::vector<LaurentSeries>& a,
                                            const std::vector<LaurentSeries>& b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t top_a = a.size() - 1;
    // derivs[j][k] = k-th derivative of b[j]
    std::vector<std::vector<LaurentSeries>> derivs(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) {
        derivs[j].push_back(b[j]);
        for (std::size_t k = 1; k <= top_a; ++k) derivs[j].push_back(derivative(derivs[j].back()));
    }
    std::vector<LaurentSeries> out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero() && a[i].is_exact()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            for (std::size_t k = 0; k <= i; ++k) {
                const LaurentSeries& dk = derivs[j][k];
                if (dk.is_zero() && dk.is_exact()) continue;
                Scalar c(binomial(i, k));
                out[i - k + j] = out[i - k + j] + scale(mul(a[i], dk), c);
            }
        }
    }
    trim_operator(out);
    return out;
}

namespace {

std::string d_power(std::size_t i) {
    if (i == 0) return "";
    if (i == 1) return "D";
    return "D^" + std::to_string(i);
}

}  // namespace

std::string operator_to_string(const std::vector<LaurentSeries>& coeffs) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t idx = coeffs.size(); idx-- > 0;) {
        const LaurentSeries& f = coeffs[idx];
        if (f.is_zero() && f.is_exact()) continue;
        if (idx == 0) {
            std::string s = to_string(f);
            if (!first) {
                if (s.front() == '-' && f.is_exact() && f.nonzero_terms() == 1) {
                    os << " - " << s.substr(1);
                } else {
                    os << " + " << (f.nonzero_terms() > 1 || !f.is_exact() ? "(" + s + ")" : s);
                }
            } else {
                os << s;
            }
            first = false;
            continue;
        }
        if (f.is_exact() && f.nonzero_terms() == 1) {
            Scalar c = f.coefficients().front();
            const bool negative = c < 0;
            LaurentSeries mag = negative ? -f : f;
            if (first) {
                if (negative) os << '-';
            } else {
                os << (negative ? " - " : " + ");
            }
            if (mag == LaurentSeries::constant(1))
                os << d_power(idx);
            else
                os << to_string(mag) << '*' << d_power(idx);
        } else {
            if (!first) os << " + ";
            os << '(' << to_string(f) << ")*" << d_power(idx);
        }
        first = false;
    }
    if (first) os << '0';
    return os.str();
}

}  // namespace detail

WeylElement::WeylElement(std::vector<LaurentSeries> coeffs) : coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_)
        if (!c.is_exact())
            raise(Errc::InvalidArgument, "Weyl coefficients must be Laurent polynomials, got " + to_string(c));
    detail::trim_operator(coeffs_);
}

WeylElement WeylElement::scalar(const LaurentSeries& f) { return WeylElement({f}); }

WeylElement WeylElement::d() { return term(LaurentSeries::constant(1), 1); }

WeylElement WeylElement::term(const LaurentSeries& f, std::size_t power) {
    std::vector<LaurentSeries> cs(power + 1);
    cs[power] = f;
    return WeylElement(std::move(cs));
}

LaurentSeries WeylElement::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : LaurentSeries{}; }

WeylElement operator+(const WeylElement& a, const WeylElement& b) {
    return WeylElement(detail::operator_sum(a.coefficients(), b.coefficients()));
}

WeylElement operator-(const WeylElement& a) {
    std::vector<LaurentSeries> cs;
    for (const auto& c : a.coefficients()) cs.push_back(-c);
    return WeylElement(std::move(cs));
}

WeylElement operator-(const WeylElement& a, const WeylElement& b) { return a + (-b); }

WeylElement weyl_mul(const WeylElement& a, const WeylElement& b) {
    return WeylElement(detail::operator_product(a.coefficients(), b.coefficients()));
}

WeylElement operator*(const WeylElement& a, const WeylElement& b) { return weyl_mul(a, b); }

WeylElement weyl_bracket(const WeylElement& a, const WeylElement& b) { return weyl_mul(a, b) - weyl_mul(b, a); }

OrderValue order(const WeylElement& a) {
    if (a.is_zero()) return OrderValue::neg_infinity();
    return OrderValue::finite(static_cast<long>(a.coefficients().size()) - 1);
}

std::string to_string(const WeylElement& a) { return detail::operator_to_string(a.coefficients()); }

}  // namespace wittkit
