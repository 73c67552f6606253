#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sysbound
{

enum class ErrorCode {
    InvalidPresentation,
    NonTerminatingRewrite,
    RingMismatch,
    NotDegreeTwo,
    DivisionInconsistent,
    MetadataOnlySpace,
    MissingTangentData,
    MissingOddClass,
    NoPrimitiveClass,
    EmptyIntersection,
    WindowExhausted,
    KunnethViolation,
    PreconditionUnmet,
    LichnerowiczObstruction,
    DegenerateClass,
    UnsupportedRank,
    InvalidNormalization,
    DimensionTooLow,
    RankTooLarge,
    BoundViolated,
    NonPolynomialResult,
    TooFewVariables,
    ParseError,
    ValidationError,
    InvalidArgument,
};

constexpr std::string_view error_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidPresentation: return "InvalidPresentation";
    case ErrorCode::NonTerminatingRewrite: return "NonTerminatingRewrite";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::NotDegreeTwo: return "NotDegreeTwo";
    case ErrorCode::DivisionInconsistent: return "DivisionInconsistent";
    case ErrorCode::MetadataOnlySpace: return "MetadataOnlySpace";
    case ErrorCode::MissingTangentData: return "MissingTangentData";
    case ErrorCode::MissingOddClass: return "MissingOddClass";
    case ErrorCode::NoPrimitiveClass: return "NoPrimitiveClass";
    case ErrorCode::EmptyIntersection: return "EmptyIntersection";
    case ErrorCode::WindowExhausted: return "WindowExhausted";
    case ErrorCode::KunnethViolation: return "KunnethViolation";
    case ErrorCode::PreconditionUnmet: return "PreconditionUnmet";
    case ErrorCode::LichnerowiczObstruction: return "LichnerowiczObstruction";
    case ErrorCode::DegenerateClass: return "DegenerateClass";
    case ErrorCode::UnsupportedRank: return "UnsupportedRank";
    case ErrorCode::InvalidNormalization: return "InvalidNormalization";
    case ErrorCode::DimensionTooLow: return "DimensionTooLow";
    case ErrorCode::RankTooLarge: return "RankTooLarge";
    case ErrorCode::BoundViolated: return "BoundViolated";
    case ErrorCode::NonPolynomialResult: return "NonPolynomialResult";
    case ErrorCode::TooFewVariables: return "TooFewVariables";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Domain error raised by every sysbound operation.
///
/// `what()` carries a human-readable message; `code()` is the stable
/// machine-readable kind, `hypothesis()` names the violated precondition
/// (for example "b2(N) = 0") when one applies.
class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string& message, std::string hypothesis = {})
        : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code),
          hypothesis_(std::move(hypothesis))
    {
    }

    ErrorCode code() const noexcept { return code_; }
    const std::string& hypothesis() const noexcept { return hypothesis_; }

private:
    ErrorCode code_;
    std::string hypothesis_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message, std::string hypothesis = {})
{
    throw Error(code, message, std::move(hypothesis));
}

} // namespace sysbound
