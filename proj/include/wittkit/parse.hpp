#pragma once

#include "wittkit/series.hpp"
#include "wittkit/weyl.hpp"
#include "wittkit/witt.hpp"

#include <string_view>
#include <vector>

namespace wittkit {

/// Value of an expression: sum_i coeffs[i] D^i in normal order. A value
/// without D is a plain series.
struct Expr {
    std::vector<LaurentSeries> coeffs;

    bool is_series() const { return coeffs.size() <= 1; }
    LaurentSeries as_series() const;   // InvalidArgument if D occurs
    WeylElement as_weyl() const;       // InvalidArgument on truncated coefficients
    WittElement as_witt() const;       // InvalidArgument unless the value is f D
};

/// Grammar, whitespace-insensitive:
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := power (('*'|'/') power | power)*      juxtaposition multiplies
///   power  := factor ('^' ['-'] int)?
///   factor := int ['/' int] | 'x' | 'D' | '(' expr ')' | '[' expr ',' expr ']' | 'O(x^' ['-'] int ')'
/// O(x^k) is the zero series known below x^k, so "1 + x + O(x^2)" has precision 2.
/// Division and negative powers invert series with `terms` terms when the
/// inverse is not a monomial. Throws ParseError with the offending position.
Expr parse_expression(std::string_view text, long terms = kDefaultPrecision);

LaurentSeries parse_series(std::string_view text, long terms = kDefaultPrecision);
WeylElement parse_weyl(std::string_view text, long terms = kDefaultPrecision);
WittElement parse_witt(std::string_view text, long terms = kDefaultPrecision);

}  // namespace wittkit
