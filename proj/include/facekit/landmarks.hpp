#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace facekit {

/// The 21 facial feature points, in their canonical order.
enum class FacePointId : std::uint8_t {
    mid_top_left_eyebrow,
    under_mid_bottom_left_eyelid,
    right_of_left_eyebrow,
    left_of_left_eyebrow,
    mid_top_right_eyebrow,
    under_mid_bottom_right_eyelid,
    right_of_right_eyebrow,
    left_of_right_eyebrow,
    nose_tip,
    midpoint_between_eyebrows,
    left_corner_mouth,
    right_corner_mouth,
    outside_left_corner_mouth,
    outside_right_corner_mouth,
    top_dip_upper_lip,
    bottom_chin,
    top_skull,
    top_right_forehead,
    middle_forehead,
    mid_right_cheek,
    mid_left_cheek,
};

inline constexpr int kFacePointCount = 21;

/// All 21 ids in enum order.
const std::array<FacePointId, kFacePointCount>& all_face_points();

std::string_view to_string(FacePointId id);

/// Returns true and sets `out` when `name` is one of the 21 canonical names.
bool face_point_from_string(std::string_view name, FacePointId& out);

/// One feature point: pixel position plus camera-space 3D coordinates.
/// px/py use raster axes (x right, y down); x/y/z are meters in the
/// producer's camera frame (y up, z increasing away from the camera).
struct Landmark {
    double px = 0.0;
    double py = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    bool operator==(const Landmark&) const = default;
};

struct LandmarkSet {
    std::string image_ref;
    int width = 0;
    int height = 0;
    std::map<FacePointId, Landmark> points;

    const Landmark& at(FacePointId id) const { return points.at(id); }

    bool operator==(const LandmarkSet&) const = default;
};

struct Violation {
    std::string where; // point name or field
    std::string rule;  // the invariant that failed
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Parses a landmark JSON document. Throws Error with code MalformedJson,
/// MissingPoint, DuplicatePoint or OutOfRange.
LandmarkSet parse_landmark_file(const std::string& bytes);

/// Reads the file at `path` and parses it. Throws IoFailure when unreadable.
LandmarkSet load_landmark_file(const std::string& path);

/// Canonical JSON form; parse_landmark_file(serialize(ls)) == ls.
std::string serialize_landmark_set(const LandmarkSet& ls);

/// Checks every type invariant. Never throws; violations are reported.
ValidationReport validate(const LandmarkSet& ls);

} // namespace facekit
