#include "xxz/errors.hpp"

namespace xxz {

const char* to_string(ErrorCode c) {
    switch (c) {
        case ErrorCode::Domain: return "DomainError";
        case ErrorCode::PoleProximity: return "PoleProximity";
        case ErrorCode::Branch: return "BranchError";
        case ErrorCode::Gapless: return "GaplessRegime";
        case ErrorCode::DegenerateBoundary: return "DegenerateBoundary";
        case ErrorCode::RegimeBoundary: return "RegimeBoundary";
        case ErrorCode::AmbiguousSector: return "AmbiguousSector";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::WrongRootCount: return "WrongRootCount";
        case ErrorCode::RealityViolation: return "RealityViolation";
        case ErrorCode::NegativeNorm: return "NegativeNorm";
        case ErrorCode::SingularMatrix: return "SingularMatrix";
        case ErrorCode::SingularPrefactor: return "SingularPrefactor";
        case ErrorCode::SizeCap: return "SizeCap";
        case ErrorCode::DegenerateGroundState: return "DegenerateGroundState";
        case ErrorCode::ConvergenceDomain: return "ConvergenceDomain";
        case ErrorCode::Unclassified: return "UnclassifiedConfiguration";
    }
    return "Unknown";
}

bool is_regime_error(ErrorCode c) {
    switch (c) {
        case ErrorCode::Gapless:
        case ErrorCode::DegenerateBoundary:
        case ErrorCode::RegimeBoundary:
        case ErrorCode::AmbiguousSector:
        case ErrorCode::ConvergenceDomain:
        case ErrorCode::Unclassified:
            return true;
        default:
            return false;
    }
}

}  // namespace xxz
