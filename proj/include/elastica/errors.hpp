#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace elastica {

enum class ErrorKind {
    DomainError,
    PoleAtOne,
    PoleError,
    DegenerateRoots,
    NoSolutionInStrip,
    NoRealBoundary,
    FrameDegenerate,
    ClosureViolated,
    BranchError,
    TargetOutOfRange,
    NonPeriodic,
    Unbounded,
};

inline constexpr std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::PoleAtOne: return "PoleAtOne";
        case ErrorKind::PoleError: return "PoleError";
        case ErrorKind::DegenerateRoots: return "DegenerateRoots";
        case ErrorKind::NoSolutionInStrip: return "NoSolutionInStrip";
        case ErrorKind::NoRealBoundary: return "NoRealBoundary";
        case ErrorKind::FrameDegenerate: return "FrameDegenerate";
        case ErrorKind::ClosureViolated: return "ClosureViolated";
        case ErrorKind::BranchError: return "BranchError";
        case ErrorKind::TargetOutOfRange: return "TargetOutOfRange";
        case ErrorKind::NonPeriodic: return "NonPeriodic";
        case ErrorKind::Unbounded: return "Unbounded";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what)
{
    throw Error(kind, what);
}

} // namespace elastica
