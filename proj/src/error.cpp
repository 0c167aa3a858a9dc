#include "qgal/error.hpp"

namespace qgal {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ModeMismatch: return "ModeMismatch";
    case ErrorCode::DegenerateInstantiation: return "DegenerateInstantiation";
    case ErrorCode::NotAPerfectSquare: return "NotAPerfectSquare";
    case ErrorCode::TerminationBudgetExceeded: return "TerminationBudgetExceeded";
    case ErrorCode::SlotMismatch: return "SlotMismatch";
    case ErrorCode::MissingTruncation: return "MissingTruncation";
    case ErrorCode::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorCode::NotInvertibleAtTruncation: return "NotInvertibleAtTruncation";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::TerminationViolation: return "TerminationViolation";
    case ErrorCode::TailOrderViolation: return "TailOrderViolation";
    case ErrorCode::UnknownCase: return "UnknownCase";
    case ErrorCode::NotDefinedAtZero: return "NotDefinedAtZero";
    case ErrorCode::StructureViolation: return "StructureViolation";
    case ErrorCode::SingularSolve: return "SingularSolve";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

} // namespace qgal
