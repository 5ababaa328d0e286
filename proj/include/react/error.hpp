#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace react {

enum class ErrorKind {
    InsufficientData,
    DegenerateVariance,
    InvalidArgument,
    EmptyGrid,
    EmptyRegion,
    GridNotStraddling,
    DimensionMismatch,
    ZeroContrast,
    UnsupportedPair,
    NegativeDelta,
    NonpositiveNNT,
    MixedRegions,
    EmptySample,
    TooFewDraws,
    InvalidCounts,
    EmptyArm,
    NoStudies,
    SingleStudy,
    TooFewReps,
    NotPositiveDefinite,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every precondition failure in the library surfaces as this exception; the
// kind mirrors the error names used throughout the documentation.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline void require(bool condition, ErrorKind kind, const std::string& what) {
    if (!condition) {
        throw Error(kind, what);
    }
}

}  // namespace react
