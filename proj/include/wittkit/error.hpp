#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wittkit {

enum class Errc {
    ZeroDivisor,
    NonzeroResidue,
    ResidueUnknown,
    CompositionDomain,
    Undecidable,
    NoEigenvector,
    NotIntegerMultiple,
    NotAPseudomonoid,
    SubsetNotInG,
    WindowTooLarge,
    GradeOverflow,
    NotInG,
    ZeroElement,
    UnsupportedForm,
    InvalidEndo,
    InvalidArgument,
    ParseError,
    Internal,
};

std::string_view errc_name(Errc code) noexcept;

// Every domain failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace wittkit
