#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace taustat {

enum class ErrorCode {
    EmptyOrSingleton,
    NonFiniteField,
    DuplicateId,
    InvalidArgument,
    DegenerateBackgroundOdds,
    OutOfRange,
    UndefinedNeighbor,
    MismatchedBandSets,
    InsufficientSims,
    TooFewReplicates,
    TooFewValues,
    NoCrossings,
    NoInhibition,
    MissingColumn,
    UnparseableRow,
    Io,
};

[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::EmptyOrSingleton: return "EmptyOrSingleton";
        case ErrorCode::NonFiniteField: return "NonFiniteField";
        case ErrorCode::DuplicateId: return "DuplicateId";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::DegenerateBackgroundOdds: return "DegenerateBackgroundOdds";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::UndefinedNeighbor: return "UndefinedNeighbor";
        case ErrorCode::MismatchedBandSets: return "MismatchedBandSets";
        case ErrorCode::InsufficientSims: return "InsufficientSims";
        case ErrorCode::TooFewReplicates: return "TooFewReplicates";
        case ErrorCode::TooFewValues: return "TooFewValues";
        case ErrorCode::NoCrossings: return "NoCrossings";
        case ErrorCode::NoInhibition: return "NoInhibition";
        case ErrorCode::MissingColumn: return "MissingColumn";
        case ErrorCode::UnparseableRow: return "UnparseableRow";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace taustat
