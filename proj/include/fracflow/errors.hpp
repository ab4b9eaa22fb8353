#pragma once

#include <stdexcept>
#include <string>

namespace fracflow {

/// Machine-readable reason for a thrown FlowError.
enum class ErrorCode {
    NonMonotone,
    BadOrigin,
    BadCount,
    BadHorizon,
    OutOfRange,
    BadOrder,
    BadIndex,
    DimensionMismatch,
    Unsupported,
    BadExponent,
    NoConvergence,
    IllPosed,
    NotDifferentiable,
    DomainEscape,
    StepConditionViolated,
    ProxFailure,
    FloorReached,
    StepBudget,
    ConfigError,
};

[[nodiscard]] constexpr const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonMonotone: return "NonMonotone";
        case ErrorCode::BadOrigin: return "BadOrigin";
        case ErrorCode::BadCount: return "BadCount";
        case ErrorCode::BadHorizon: return "BadHorizon";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::BadOrder: return "BadOrder";
        case ErrorCode::BadIndex: return "BadIndex";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::Unsupported: return "Unsupported";
        case ErrorCode::BadExponent: return "BadExponent";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::IllPosed: return "IllPosed";
        case ErrorCode::NotDifferentiable: return "NotDifferentiable";
        case ErrorCode::DomainEscape: return "DomainEscape";
        case ErrorCode::StepConditionViolated: return "StepConditionViolated";
        case ErrorCode::ProxFailure: return "ProxFailure";
        case ErrorCode::FloorReached: return "FloorReached";
        case ErrorCode::StepBudget: return "StepBudget";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

/// Exception carrying an ErrorCode; all library errors are reported through it.
class FlowError : public std::runtime_error {
public:
    FlowError(ErrorCode code, const std::string& what_arg)
        : std::runtime_error(std::string(to_string(code)) + ": " + what_arg), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace fracflow
