#pragma once

#include "facekit/geometry.hpp"
#include "facekit/lbp.hpp"
#include "facekit/pose.hpp"
#include "facekit/preprocess.hpp"

#include <array>
#include <optional>
#include <string>

namespace facekit {

/// Toolkit configuration. Everything here is surfaced in the JSON config
/// file; component sizes are deliberately not (see component_size).
struct Config {
    PoseConfig pose;
    PreprocessConfig preprocess;
    MarginConfig margins;

    /// Histogram grid per component, indexed by ComponentKind.
    std::array<GridSpec, kComponentCount> grids = default_grids();

    /// Optional per-bucket weight overrides, indexed by PoseBucket then
    /// ComponentKind. Buckets without an override use default_weights.
    std::array<std::optional<std::array<double, kComponentCount>>, kPoseBucketCount>
        weight_overrides;

    /// Fused scores below this are flagged rejected. 0 disables rejection.
    double reject_tau = 0.0;

    static std::array<GridSpec, kComponentCount> default_grids();

    /// Stable hash of everything that affects descriptor comparability:
    /// grid dims, component sizes, sigmas, neighbor-order tag.
    std::string fingerprint() const;

    bool operator==(const Config&) const = default;
};

/// Parses and validates a config JSON document. Throws BadConfig.
Config parse_config(const std::string& bytes);

/// Loads the config file, or returns defaults when path is empty.
/// Throws IoFailure when a named file cannot be read.
Config load_config(const std::string& path);

} // namespace facekit
