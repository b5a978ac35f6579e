#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace clab {

enum class ErrorKind {
    Domain,
    Config,
    EmptySampleSet,
    RootFindFailure,
    SupportViolation,
    CausalityViolation,
    ZeroDenominator,
    OverflowGuard,
    SolveFailure,
    Io,
};

std::string_view to_string(ErrorKind kind);

/// Base class of every error raised by the library. The kind tag lets callers
/// (the CLI in particular) map failures onto exit codes without RTTI chains.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);
    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

#define CLAB_DECLARE_ERROR(Name, Kind)                                   \
    class Name : public Error {                                          \
    public:                                                              \
        explicit Name(const std::string& what) : Error(Kind, what) {}    \
    }

CLAB_DECLARE_ERROR(DomainError, ErrorKind::Domain);
CLAB_DECLARE_ERROR(ConfigError, ErrorKind::Config);
CLAB_DECLARE_ERROR(EmptySampleSet, ErrorKind::EmptySampleSet);
CLAB_DECLARE_ERROR(RootFindFailure, ErrorKind::RootFindFailure);
CLAB_DECLARE_ERROR(SupportViolation, ErrorKind::SupportViolation);
CLAB_DECLARE_ERROR(CausalityViolation, ErrorKind::CausalityViolation);
CLAB_DECLARE_ERROR(ZeroDenominator, ErrorKind::ZeroDenominator);
CLAB_DECLARE_ERROR(OverflowGuard, ErrorKind::OverflowGuard);
CLAB_DECLARE_ERROR(SolveFailure, ErrorKind::SolveFailure);
CLAB_DECLARE_ERROR(IoError, ErrorKind::Io);

#undef CLAB_DECLARE_ERROR

}  // namespace clab
