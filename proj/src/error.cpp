#include "react/error.hpp"

namespace react {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InsufficientData: return "InsufficientData";
        case ErrorKind::DegenerateVariance: return "DegenerateVariance";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::EmptyGrid: return "EmptyGrid";
        case ErrorKind::EmptyRegion: return "EmptyRegion";
        case ErrorKind::GridNotStraddling: return "GridNotStraddling";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::ZeroContrast: return "ZeroContrast";
        case ErrorKind::UnsupportedPair: return "UnsupportedPair";
        case ErrorKind::NegativeDelta: return "NegativeDelta";
        case ErrorKind::NonpositiveNNT: return "NonpositiveNNT";
        case ErrorKind::MixedRegions: return "MixedRegions";
        case ErrorKind::EmptySample: return "EmptySample";
        case ErrorKind::TooFewDraws: return "TooFewDraws";
        case ErrorKind::InvalidCounts: return "InvalidCounts";
        case ErrorKind::EmptyArm: return "EmptyArm";
        case ErrorKind::NoStudies: return "NoStudies";
        case ErrorKind::SingleStudy: return "SingleStudy";
        case ErrorKind::TooFewReps: return "TooFewReps";
        case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    }
    return "Unknown";
}

}  // namespace react
