#pragma once

#include <stdexcept>
#include <string>

namespace tracklab {

enum class ErrorCode {
    NotSimplicial,
    NotClosed,
    NotConnected,
    NotASphere,
    InvalidSpec,
    UnknownVertex,
    UnknownEdge,
    UnknownRegion,
    MismatchedTriangulation,
    InvalidPattern,
    NotNormal,
    NotReturning,
    NotInnermost,
    NoAdjacentPair,
    NotATree,
    ParallelTracksPresent,
    UnsupportedTriangulation,
    InternalNoProgress,
    BoundTooLarge,
    BadInput,
    Internal,
};

inline const char* to_string(ErrorCode c) {
    switch (c) {
        case ErrorCode::NotSimplicial: return "NotSimplicial";
        case ErrorCode::NotClosed: return "NotClosed";
        case ErrorCode::NotConnected: return "NotConnected";
        case ErrorCode::NotASphere: return "NotASphere";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
        case ErrorCode::UnknownVertex: return "UnknownVertex";
        case ErrorCode::UnknownEdge: return "UnknownEdge";
        case ErrorCode::UnknownRegion: return "UnknownRegion";
        case ErrorCode::MismatchedTriangulation: return "MismatchedTriangulation";
        case ErrorCode::InvalidPattern: return "InvalidPattern";
        case ErrorCode::NotNormal: return "NotNormal";
        case ErrorCode::NotReturning: return "NotReturning";
        case ErrorCode::NotInnermost: return "NotInnermost";
        case ErrorCode::NoAdjacentPair: return "NoAdjacentPair";
        case ErrorCode::NotATree: return "NotATree";
        case ErrorCode::ParallelTracksPresent: return "ParallelTracksPresent";
        case ErrorCode::UnsupportedTriangulation: return "UnsupportedTriangulation";
        case ErrorCode::InternalNoProgress: return "InternalNoProgress";
        case ErrorCode::BoundTooLarge: return "BoundTooLarge";
        case ErrorCode::BadInput: return "BadInput";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

/// Library error: a code plus a human-readable message.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace tracklab
