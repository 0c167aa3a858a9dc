#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qgal {

/// Every failure the library can raise. Verification *findings* are not
/// errors; they are reported through CheckReport records instead.
enum class ErrorCode {
    DivisionByZero,
    ModeMismatch,
    DegenerateInstantiation,
    NotAPerfectSquare,
    TerminationBudgetExceeded,
    SlotMismatch,
    MissingTruncation,
    NonzeroConstantTerm,
    NotDivisible,
    AlphabetMismatch,
    NotInvertibleAtTruncation,
    SyntaxError,
    UnknownSymbol,
    TerminationViolation,
    TailOrderViolation,
    UnknownCase,
    NotDefinedAtZero,
    StructureViolation,
    SingularSolve,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace qgal
