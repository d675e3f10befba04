#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tmcf {

enum class Errc {
    InvalidArgument,
    ParseError,
    NonInvertibleDenominator,
    PrecisionExhausted,
    ZeroNumerator,
    NotAConvergent,
    ShapeViolation,
    ZeroInput,
    NotCoprime,
    NotARoot,
    SingularRoot,
    NotPrimitiveRoot,
    NoSolution,
    SizeLimit,
    InsufficientPrecision,
    NoWitness,
    NotDivisible,
    VerificationFailed,
};

std::string_view errc_name(Errc code);

/// Every failure raised by the library carries one of the Errc kinds so the
/// CLI can map it to an exit status and tests can match on it.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace tmcf
