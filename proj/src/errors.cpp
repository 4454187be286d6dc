#include "facekit/errors.hpp"

namespace facekit {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedJson:      return "MalformedJson";
        case ErrorCode::MissingPoint:       return "MissingPoint";
        case ErrorCode::DuplicatePoint:     return "DuplicatePoint";
        case ErrorCode::OutOfRange:         return "OutOfRange";
        case ErrorCode::DegenerateBox:      return "DegenerateBox";
        case ErrorCode::EmptyIntersection:  return "EmptyIntersection";
        case ErrorCode::CoincidentPoints:   return "CoincidentPoints";
        case ErrorCode::TooSmall:           return "TooSmall";
        case ErrorCode::BadGrid:            return "BadGrid";
        case ErrorCode::InvalidSigmas:      return "InvalidSigmas";
        case ErrorCode::LengthMismatch:     return "LengthMismatch";
        case ErrorCode::DescriptorMismatch: return "DescriptorMismatch";
        case ErrorCode::MissingScore:       return "MissingScore";
        case ErrorCode::NoCandidates:       return "NoCandidates";
        case ErrorCode::ConfigMismatch:     return "ConfigMismatch";
        case ErrorCode::BadConfig:          return "BadConfig";
        case ErrorCode::IoFailure:          return "IoFailure";
        case ErrorCode::CorruptGallery:     return "CorruptGallery";
        case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
        case ErrorCode::BadArguments:       return "BadArguments";
    }
    return "UnknownError";
}

int exit_status_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::IoFailure:
        case ErrorCode::CorruptGallery:
        case ErrorCode::UnsupportedVersion:
            return 3;
        case ErrorCode::NoCandidates:
            return 4;
        default:
            return 2;
    }
}

} // namespace facekit
