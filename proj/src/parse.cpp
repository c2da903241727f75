#include "wittkit/parse.hpp"

#include "wittkit/error.hpp"

#include <cctype>
#include <initializer_list>

namespace wittkit {

namespace {

using Coeffs = std::vector<LaurentSeries>;

class Parser {
public:
    Parser(std::string_view text, long terms) : text_(text), terms_(terms) {}

    Coeffs parse() {
        Coeffs v = expr();
        skip_space();
        if (pos_ != text_.size()) fail({"operator", "end of input"});
        return v;
    }

private:
    std::string_view text_;
    long terms_;
    std::size_t pos_ = 0;

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    [[noreturn]] void fail(std::initializer_list<std::string_view> expected) {
        std::string msg = "parse error at position " + std::to_string(pos_) + ": expected ";
        bool first = true;
        for (auto e : expected) {
            if (!first) msg += " | ";
            first = false;
            msg += e;
        }
        msg += ", got ";
        msg += pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : std::string("end of input");
        raise(Errc::ParseError, msg);
    }

    void expect(char c) {
        if (accept(c)) return;
        const std::string quoted{'\'', c, '\''};
        fail({quoted});
    }

    Integer integer() {
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail({"integer"});
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }

    long signed_small_int() {
        const bool neg = accept('-');
        Integer n = integer();
        if (!n.fits_slong_p()) raise(Errc::ParseError, "exponent out of range at position " + std::to_string(pos_));
        return neg ? -n.get_si() : n.get_si();
    }

    bool starts_factor() {
        char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == 'x' || c == 'D' || c == '(' || c == '[' || c == 'O';
    }

    static Coeffs series_value(LaurentSeries f) {
        Coeffs v{std::move(f)};
        detail::trim_operator(v);
        return v;
    }

    static Coeffs negate(const Coeffs& a) {
        Coeffs out;
        for (const auto& f : a) out.push_back(-f);
        return out;
    }

    LaurentSeries as_series(const Coeffs& v, std::size_t at) {
        if (v.size() > 1)
            raise(Errc::ParseError, "parse error at position " + std::to_string(at) + ": expected a series, not an operator");
        return v.empty() ? LaurentSeries{} : v.front();
    }

    LaurentSeries series_inverse(const LaurentSeries& f) { return inverse(f, terms_); }

    Coeffs expr() {
        bool neg = false;
        if (accept('-'))
            neg = true;
        else
            accept('+');
        Coeffs acc = term();
        if (neg) acc = negate(acc);
        for (;;) {
            if (accept('+'))
                acc = detail::operator_sum(acc, term());
            else if (accept('-'))
                acc = detail::operator_sum(acc, negate(term()));
            else
                return acc;
        }
    }

    Coeffs term() {
        Coeffs acc = power(true);
        for (;;) {
            if (accept('*')) {
                acc = detail::operator_product(acc, power(true));
            } else if (peek() == '/') {
                ++pos_;
                const std::size_t at = pos_;
                LaurentSeries d = as_series(power(false), at);
                acc = detail::operator_product(acc, series_value(series_inverse(d)));
            } else if (starts_factor()) {
                acc = detail::operator_product(acc, power(true));
            } else {
                return acc;
            }
        }
    }

    Coeffs power(bool allow_fraction) {
        const std::size_t at = pos_;
        Coeffs base = factor(allow_fraction);
        if (!accept('^')) return base;
        const long n = signed_small_int();
        if (n < 0) {
            LaurentSeries b = as_series(base, at);
            LaurentSeries inv = series_inverse(b);
            LaurentSeries out = LaurentSeries::constant(1);
            for (long i = 0; i < -n; ++i) out = out * inv;
            return series_value(out);
        }
        Coeffs out = series_value(LaurentSeries::constant(1));
        for (long i = 0; i < n; ++i) out = detail::operator_product(out, base);
        return out;
    }

    Coeffs factor(bool allow_fraction) {
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer num = integer();
            Integer den = 1;
            // "p/q" is one literal unless the number is itself a divisor.
            if (allow_fraction && peek() == '/' && pos_ + 1 < text_.size() &&
                std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
                ++pos_;
                den = integer();
                if (den == 0) raise(Errc::ParseError, "zero denominator at position " + std::to_string(pos_));
            }
            Scalar q(num, den);
            q.canonicalize();
            return series_value(LaurentSeries::constant(q));
        }
        if (accept('x')) return series_value(LaurentSeries::variable());
        if (accept('D')) return {LaurentSeries{}, LaurentSeries::constant(1)};
        if (accept('(')) {
            Coeffs v = expr();
            expect(')');
            return v;
        }
        if (accept('[')) {
            Coeffs a = expr();
            expect(',');
            Coeffs b = expr();
            expect(']');
            return detail::operator_sum(detail::operator_product(a, b), negate(detail::operator_product(b, a)));
        }
        if (accept('O')) {
            expect('(');
            expect('x');
            expect('^');
            const long k = signed_small_int();
            expect(')');
            return series_value(LaurentSeries::big_o(k));
        }
        fail({"integer", "'x'", "'D'", "'('", "'['", "'O('"});
    }
};

}  // namespace

LaurentSeries Expr::as_series() const {
    if (!is_series()) raise(Errc::InvalidArgument, "expected a series, got an operator");
    return coeffs.empty() ? LaurentSeries{} : coeffs.front();
}

WeylElement Expr::as_weyl() const { return WeylElement(coeffs); }

WittElement Expr::as_witt() const {
    if (coeffs.empty()) return WittElement{};
    if (coeffs.size() != 2 || !(coeffs[0].is_zero() && coeffs[0].is_exact()))
        raise(Errc::InvalidArgument, "expected a Witt element f*D, got " + detail::operator_to_string(coeffs));
    return WittElement(coeffs[1]);
}

Expr parse_expression(std::string_view text, long terms) { return {Parser(text, terms).parse()}; }

LaurentSeries parse_series(std::string_view text, long terms) { return parse_expression(text, terms).as_series(); }

WeylElement parse_weyl(std::string_view text, long terms) { return parse_expression(text, terms).as_weyl(); }

WittElement parse_witt(std::string_view text, long terms) { return parse_expression(text, terms).as_witt(); }

}  // namespace wittkit
