#pragma once

#include "wittkit/series.hpp"

#include <string>
#include <vector>

namespace wittkit {

struct OrderValue {
    bool negative_infinity = true;
    long value = 0;

    static OrderValue finite(long v) { return {false, v}; }
    static OrderValue neg_infinity() { return {true, 0}; }
    bool operator==(const OrderValue&) const = default;
};

/// Element sum_i f_i D^i of the Weyl algebra over Laurent polynomials, kept in
/// canonical form (coefficients to the left of D, top coefficient nonzero).
/// Only EXACT coefficients are accepted so that every product is exact.
class WeylElement {
public:
    WeylElement() = default;
    explicit WeylElement(std::vector<LaurentSeries> coeffs);

    static WeylElement scalar(const LaurentSeries& f);
    static WeylElement d();
    static WeylElement term(const LaurentSeries& f, std::size_t power);

    const std::vector<LaurentSeries>& coefficients() const noexcept { return coeffs_; }
    // Coefficient of D^i, zero past the top.
    LaurentSeries coeff(std::size_t i) const;
    bool is_zero() const noexcept { return coeffs_.empty(); }

    bool operator==(const WeylElement&) const = default;

private:
    std::vector<LaurentSeries> coeffs_;
};

WeylElement operator+(const WeylElement& a, const WeylElement& b);
WeylElement operator-(const WeylElement& a, const WeylElement& b);
WeylElement operator-(const WeylElement& a);
WeylElement operator*(const WeylElement& a, const WeylElement& b);

/// Product in normal form, using D^n f = sum_k C(n,k) f^(k) D^(n-k).
WeylElement weyl_mul(const WeylElement& a, const WeylElement& b);
WeylElement weyl_bracket(const WeylElement& a, const WeylElement& b);
OrderValue order(const WeylElement& a);

std::string to_string(const WeylElement& a);

namespace detail {

// Normal-ordered product on raw coefficient lists; coefficients may be truncated.
std::vector<LaurentSeries> operator_product(const std::vector<LaurentSeries>& a,
                                            const std::vector<LaurentSeries>& b);
std::vector<LaurentSeries> operator_sum(const std::vector<LaurentSeries>& a, const std::vector<LaurentSeries>& b);
void trim_operator(std::vector<LaurentSeries>& coeffs);
std::string operator_to_string(const std::vector<LaurentSeries>& coeffs);

}  // namespace detail

}  // namespace wittkit
