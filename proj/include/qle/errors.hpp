#pragma once

#include <stdexcept>
#include <string>

namespace qle {

enum class ErrorKind {
    NotSquare,
    NotHermitian,
    DimensionTooSmall,
    EigensolverFailure,
    InvalidModel,
    StepTooLarge,
    UnphysicalState,
    MemoryGuard,
    NotPassive,
    DilationVerificationFailed,
    SingularClosure,
    InvalidArgument,
    StabilityGuard,
    NonPositiveTemperature,
    ParseError,
    ValidationError,
    IoError,
};

const char* to_string(ErrorKind kind) noexcept;

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

    ErrorKind kind() const noexcept { return kind_; }
    /// Message without the kind prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

}  // namespace qle
