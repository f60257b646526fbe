#ifndef SL2GID_ERRORS_HPP
#define SL2GID_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sl2gid {

/// Base class of every error raised by the library. `kind()` is the stable
/// name used in reports and CLI diagnostics.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string &what) : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string &kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define SL2GID_DEFINE_ERROR(Name)                                                                                  \
    class Name : public Error {                                                                                    \
    public:                                                                                                        \
        explicit Name(const std::string &what) : Error(#Name, what) {}                                             \
    }

SL2GID_DEFINE_ERROR(InvalidField);
SL2GID_DEFINE_ERROR(DivisionByZero);
SL2GID_DEFINE_ERROR(AmbientMismatch);
SL2GID_DEFINE_ERROR(SpecError);
SL2GID_DEFINE_ERROR(NotAnIdeal);
SL2GID_DEFINE_ERROR(NotDiagonalizable);
SL2GID_DEFINE_ERROR(NotHomogeneous);
SL2GID_DEFINE_ERROR(MissingAssignment);
SL2GID_DEFINE_ERROR(ExpansionTooLarge);
SL2GID_DEFINE_ERROR(ParityError);
SL2GID_DEFINE_ERROR(BudgetExceeded);
SL2GID_DEFINE_ERROR(UnsupportedField);
SL2GID_DEFINE_ERROR(TheoremViolation);
SL2GID_DEFINE_ERROR(ParseError);

#undef SL2GID_DEFINE_ERROR

} // namespace sl2gid

#endif
