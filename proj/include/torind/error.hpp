#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace torind {

enum class ErrorKind {
    Malformed,
    AxiomViolation,
    NotLocal,
    HomologyZero,
    TruncationBelowHomology,
    DependentColumns,
    NonArtinian,
    BalanceMismatch,
    DegreeMismatch,
    NotSingleDegree,
    AlgebraMismatch,
    ZeroModule,
    CutoffTooSmall,
    PreconditionUnverified,
    PowerNotZero,
    PerfectInput,
    DepthNonzero,
    DepthZero,
    NotRegularVariable,
    ReductionUnavailable,
};

std::string_view to_string(ErrorKind kind);

// Every failure the library signals carries a kind so that callers (the CLI
// in particular) can map it onto an exit status without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace torind
