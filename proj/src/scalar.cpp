#include "wittkit/scalar.hpp"

#include "wittkit/error.hpp"

#include <cctype>

namespace wittkit {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::ZeroDivisor: return "ZeroDivisor";
    case Errc::NonzeroResidue: return "NonzeroResidue";
    case Errc::ResidueUnknown: return "ResidueUnknown";
    case Errc::CompositionDomain: return "CompositionDomain";
    case Errc::Undecidable: return "Undecidable";
    case Errc::NoEigenvector: return "NoEigenvector";
    case Errc::NotIntegerMultiple: return "NotIntegerMultiple";
    case Errc::NotAPseudomonoid: return "NotAPseudomonoid";
    case Errc::SubsetNotInG: return "SubsetNotInG";
    case Errc::WindowTooLarge: return "WindowTooLarge";
    case Errc::GradeOverflow: return "GradeOverflow";
    case Errc::NotInG: return "NotInG";
    case Errc::ZeroElement: return "ZeroElement";
    case Errc::UnsupportedForm: return "UnsupportedForm";
    case Errc::InvalidEndo: return "InvalidEndo";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
    case Errc::Internal: return "Internal";
    }
    return "Unknown";
}

Scalar make_scalar(long num, long den) {
    Scalar s(num, den);
    s.canonicalize();
    return s;
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

std::optional<Scalar> parse_scalar(std::string_view text) {
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    Integer n(std::string(num), 10);
    Integer d(std::string(den), 10);
    if (d == 0) return std::nullopt;
    Scalar s(n, d);
    s.canonicalize();
    if (negative) s = -s;
    return s;
}

std::string to_string(const Scalar& s) { return s.get_str(); }

bool is_integer(const Scalar& s) { return s.get_den() == 1; }

long to_long(const Scalar& s) {
    if (!is_integer(s) || !s.get_num().fits_slong_p())
        raise(Errc::InvalidArgument, "expected a machine-sized integer, got " + to_string(s));
    return s.get_num().get_si();
}

Scalar floor_scalar(const Scalar& s) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    return Scalar(q);
}

Scalar ceil_scalar(const Scalar& s) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    return Scalar(q);
}

Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}  // namespace wittkit
