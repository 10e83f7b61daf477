#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace willmore {

enum class ErrorKind {
    InvalidArgument,
    InvalidCurve,
    AxisContact,
    BoundaryIndex,
    InsufficientResolution,
    BoundaryMismatch,
    ZeroOffset,
    HalfCircleCase,
    BranchMismatch,
    StepFailure,
    Parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` tells callers which
/// contract was violated.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::InvalidCurve: return "InvalidCurve";
        case ErrorKind::AxisContact: return "AxisContact";
        case ErrorKind::BoundaryIndex: return "BoundaryIndex";
        case ErrorKind::InsufficientResolution: return "InsufficientResolution";
        case ErrorKind::BoundaryMismatch: return "BoundaryMismatch";
        case ErrorKind::ZeroOffset: return "ZeroOffset";
        case ErrorKind::HalfCircleCase: return "HalfCircleCase";
        case ErrorKind::BranchMismatch: return "BranchMismatch";
        case ErrorKind::StepFailure: return "StepFailure";
        case ErrorKind::Parse: return "Parse";
    }
    return "Unknown";
}

}  // namespace willmore
