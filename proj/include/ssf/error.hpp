#pragma once

#include <stdexcept>
#include <string>

namespace ssf {

enum class ErrorCode {
    InvalidArgument,
    DimensionMismatch,
    NotHermitian,
    NotUnitary,
    NoConvergence,
    ZeroHarmonic,
    PathMismatch,
    OnUnitCircle,
    PhaseTooClose,
    BadWindow,
};

const char* to_string(ErrorCode code) noexcept;

/// Exception thrown by every library routine on a violated precondition or a
/// numerical failure. The code identifies the failure class so callers can
/// dispatch without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace ssf
