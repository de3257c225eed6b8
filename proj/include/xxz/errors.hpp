#pragma once

#include <stdexcept>
#include <string>

namespace xxz {

enum class ErrorCode {
    Domain,
    PoleProximity,
    Branch,
    Gapless,
    DegenerateBoundary,
    RegimeBoundary,
    AmbiguousSector,
    NoConvergence,
    WrongRootCount,
    RealityViolation,
    NegativeNorm,
    SingularMatrix,
    SingularPrefactor,
    SizeCap,
    DegenerateGroundState,
    ConvergenceDomain,
    Unclassified,
};

const char* to_string(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Regime-type errors: the input lies outside what the formulas cover.
bool is_regime_error(ErrorCode c);

}  // namespace xxz
