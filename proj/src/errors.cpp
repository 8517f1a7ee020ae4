#include "qle/errors.hpp"

namespace qle {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NotSquare: return "NotSquare";
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::DimensionTooSmall: return "DimensionTooSmall";
        case ErrorKind::EigensolverFailure: return "EigensolverFailure";
        case ErrorKind::InvalidModel: return "InvalidModel";
        case ErrorKind::StepTooLarge: return "StepTooLarge";
        case ErrorKind::UnphysicalState: return "UnphysicalState";
        case ErrorKind::MemoryGuard: return "MemoryGuard";
        case ErrorKind::NotPassive: return "NotPassive";
        case ErrorKind::DilationVerificationFailed: return "DilationVerificationFailed";
        case ErrorKind::SingularClosure: return "SingularClosure";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::StabilityGuard: return "StabilityGuard";
        case ErrorKind::NonPositiveTemperature: return "NonPositiveTemperature";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ValidationError: return "ValidationError";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace qle
