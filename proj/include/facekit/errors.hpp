#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace facekit {

enum class ErrorCode {
    // landmark files
    MalformedJson,
    MissingPoint,
    DuplicatePoint,
    OutOfRange,
    // geometry
    DegenerateBox,
    EmptyIntersection,
    // pose
    CoincidentPoints,
    // features
    TooSmall,
    BadGrid,
    InvalidSigmas,
    // matching
    LengthMismatch,
    DescriptorMismatch,
    MissingScore,
    NoCandidates,
    // gallery / config
    ConfigMismatch,
    BadConfig,
    // I/O
    IoFailure,
    CorruptGallery,
    UnsupportedVersion,
    // CLI
    BadArguments,
};

std::string_view error_code_name(ErrorCode code);

/// Process exit status the CLI maps an error to:
/// 2 = validation failure, 3 = I/O failure, 4 = no candidates.
int exit_status_for(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    std::string_view code_name() const noexcept { return error_code_name(code_); }

private:
    ErrorCode code_;
};

} // namespace facekit
