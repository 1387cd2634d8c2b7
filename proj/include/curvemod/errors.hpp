#pragma once

#include <stdexcept>
#include <string>

namespace curvemod {

enum class FailureCode {
    InvalidGroup,
    InvalidOrbit,
    DegreeTooSmall,
    MissingCanonicalData,
    InconsistentRamification,
    NonIntegralTerm,
    NonIntegralMultiplicity,
    NegativeMultiplicity,
    DimensionMismatch,
    OutOfRange,
    NotPrime,
    BadLevel,
    WrongResidue,
    BadClass,
    BadSubgroupForCase,
    AuditFailure,
    TooLarge,
    ParseError,
};

inline const char* failure_name(FailureCode c) {
    switch (c) {
        case FailureCode::InvalidGroup: return "InvalidGroup";
        case FailureCode::InvalidOrbit: return "InvalidOrbit";
        case FailureCode::DegreeTooSmall: return "DegreeTooSmall";
        case FailureCode::MissingCanonicalData: return "MissingCanonicalData";
        case FailureCode::InconsistentRamification: return "InconsistentRamification";
        case FailureCode::NonIntegralTerm: return "NonIntegralTerm";
        case FailureCode::NonIntegralMultiplicity: return "NonIntegralMultiplicity";
        case FailureCode::NegativeMultiplicity: return "NegativeMultiplicity";
        case FailureCode::DimensionMismatch: return "DimensionMismatch";
        case FailureCode::OutOfRange: return "OutOfRange";
        case FailureCode::NotPrime: return "NotPrime";
        case FailureCode::BadLevel: return "BadLevel";
        case FailureCode::WrongResidue: return "WrongResidue";
        case FailureCode::BadClass: return "BadClass";
        case FailureCode::BadSubgroupForCase: return "BadSubgroupForCase";
        case FailureCode::AuditFailure: return "AuditFailure";
        case FailureCode::TooLarge: return "TooLarge";
        case FailureCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

class Failure : public std::runtime_error {
public:
    Failure(FailureCode code, const std::string& message)
        : std::runtime_error(std::string(failure_name(code)) + ": " + message), code_(code) {}

    FailureCode code() const { return code_; }

private:
    FailureCode code_;
};

}  // namespace curvemod
