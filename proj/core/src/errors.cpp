#include "clab/errors.hpp"

namespace clab {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Domain: return "DomainError";
        case ErrorKind::Config: return "ConfigError";
        case ErrorKind::EmptySampleSet: return "EmptySampleSet";
        case ErrorKind::RootFindFailure: return "RootFindFailure";
        case ErrorKind::SupportViolation: return "SupportViolation";
        case ErrorKind::CausalityViolation: return "CausalityViolation";
        case ErrorKind::ZeroDenominator: return "ZeroDenominator";
        case ErrorKind::OverflowGuard: return "OverflowGuard";
        case ErrorKind::SolveFailure: return "SolveFailure";
        case ErrorKind::Io: return "IoError";
    }
    return "Error";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace clab
