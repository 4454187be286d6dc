#pragma once

#include "facekit/geometry.hpp"
#include "facekit/landmarks.hpp"

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace facekit {

/// Head rotations in degrees, each within [-90, +90].
struct PoseAngles {
    double pitch = 0.0;
    double yaw = 0.0;
    double roll = 0.0;
};

enum class PoseBucket : std::uint8_t { Frontal, Left, Right, Up, Down };

inline constexpr int kPoseBucketCount = 5;

const std::array<PoseBucket, kPoseBucketCount>& all_pose_buckets();

std::string_view to_string(PoseBucket bucket);
bool pose_bucket_from_string(std::string_view name, PoseBucket& out);

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

enum class Axis3 : std::uint8_t { X, Z };

struct PoseConfig {
    double threshold_degrees = 25.0;
    bool flip_yaw = false;
    bool flip_pitch = false;

    bool operator==(const PoseConfig&) const = default;
};

/// Signed inclination of the line p1->p2 toward the given axis:
/// arcsin((a1 - a2) / |p1 - p2|) in degrees, where a is the axis
/// coordinate. Antisymmetric in the point order; |result| <= 90.
/// Throws CoincidentPoints when p1 == p2.
double signed_axis_angle(Point3 p1, Point3 p2, Axis3 axis);

/// pitch = angle(middle_forehead, bottom_chin, Z)
/// roll  = angle(middle_forehead, bottom_chin, X)
/// yaw   = angle(mid_right_cheek, mid_left_cheek, Z)
/// With z growing away from the camera: right cheek deeper => positive
/// yaw => Right bucket; forehead deeper => positive pitch => Up.
/// cfg.flip_yaw / cfg.flip_pitch negate the respective angle for
/// producers with a mirrored axis convention.
PoseAngles estimate_pose(const LandmarkSet& ls, const PoseConfig& cfg = {});

/// yaw beyond +/-threshold wins over pitch; roll alone never leaves
/// Frontal. Boundaries are strict: yaw == threshold stays Frontal.
PoseBucket bucket_pose(const PoseAngles& angles, double threshold_degrees = 25.0);

/// True when the face only counts as Frontal because roll is ignored.
bool roll_only_exceeds(const PoseAngles& angles, double threshold_degrees);

/// Components enrolled and matched for the bucket, in canonical order.
std::vector<ComponentKind> active_components(PoseBucket bucket);

} // namespace facekit
