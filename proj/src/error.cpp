#include "torind/error.hpp"

namespace torind {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Malformed: return "Malformed";
        case ErrorKind::AxiomViolation: return "AxiomViolation";
        case ErrorKind::NotLocal: return "NotLocal";
        case ErrorKind::HomologyZero: return "HomologyZero";
        case ErrorKind::TruncationBelowHomology: return "TruncationBelowHomology";
        case ErrorKind::DependentColumns: return "DependentColumns";
        case ErrorKind::NonArtinian: return "NonArtinian";
        case ErrorKind::BalanceMismatch: return "BalanceMismatch";
        case ErrorKind::DegreeMismatch: return "DegreeMismatch";
        case ErrorKind::NotSingleDegree: return "NotSingleDegree";
        case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
        case ErrorKind::ZeroModule: return "ZeroModule";
        case ErrorKind::CutoffTooSmall: return "CutoffTooSmall";
        case ErrorKind::PreconditionUnverified: return "PreconditionUnverified";
        case ErrorKind::PowerNotZero: return "PowerNotZero";
        case ErrorKind::PerfectInput: return "PerfectInput";
        case ErrorKind::DepthNonzero: return "DepthNonzero";
        case ErrorKind::DepthZero: return "DepthZero";
        case ErrorKind::NotRegularVariable: return "NotRegularVariable";
        case ErrorKind::ReductionUnavailable: return "ReductionUnavailable";
    }
    return "Unknown";
}

}  // namespace torind
