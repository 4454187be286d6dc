#include "facekit/pose.hpp"

#include "facekit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace facekit {

namespace {

constexpr std::array<std::string_view, kPoseBucketCount> kBucketNames = {
    "frontal", "left", "right", "up", "down",
};

Point3 camera_point(const LandmarkSet& ls, FacePointId id) {
    const Landmark& lm = ls.at(id);
    return {lm.x, lm.y, lm.z};
}

double angle_or_rethrow(const LandmarkSet& ls, FacePointId a, FacePointId b, Axis3 axis) {
    try {
        return signed_axis_angle(camera_point(ls, a), camera_point(ls, b), axis);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::CoincidentPoints)
            throw Error(ErrorCode::CoincidentPoints,
                        std::string(to_string(a)) + " and " + std::string(to_string(b)) +
                            " coincide");
        throw;
    }
}

} // namespace

const std::array<PoseBucket, kPoseBucketCount>& all_pose_buckets() {
    static const std::array<PoseBucket, kPoseBucketCount> buckets = {
        PoseBucket::Frontal, PoseBucket::Left, PoseBucket::Right,
        PoseBucket::Up,      PoseBucket::Down,
    };
    return buckets;
}

std::string_view to_string(PoseBucket bucket) {
    return kBucketNames[static_cast<std::size_t>(bucket)];
}

bool pose_bucket_from_string(std::string_view name, PoseBucket& out) {
    for (int i = 0; i < kPoseBucketCount; ++i) {
        if (kBucketNames[static_cast<std::size_t>(i)] == name) {
            out = static_cast<PoseBucket>(i);
            return true;
        }
    }
    return false;
}

double signed_axis_angle(Point3 p1, Point3 p2, Axis3 axis) {
    const double dx = p1.x - p2.x;
    const double dy = p1.y - p2.y;
    const double dz = p1.z - p2.z;
    const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
    if (dist == 0.0)
        throw Error(ErrorCode::CoincidentPoints, "points coincide");

    const double da = (axis == Axis3::X) ? dx : dz;
    const double ratio = std::clamp(da / dist, -1.0, 1.0);
    return std::asin(ratio) * 180.0 / std::numbers::pi;
}

PoseAngles estimate_pose(const LandmarkSet& ls, const PoseConfig& cfg) {
    using Id = FacePointId;
    PoseAngles angles;
    angles.pitch = angle_or_rethrow(ls, Id::middle_forehead, Id::bottom_chin, Axis3::Z);
    angles.roll = angle_or_rethrow(ls, Id::middle_forehead, Id::bottom_chin, Axis3::X);
    angles.yaw = angle_or_rethrow(ls, Id::mid_right_cheek, Id::mid_left_cheek, Axis3::Z);
    if (cfg.flip_yaw)
        angles.yaw = -angles.yaw;
    if (cfg.flip_pitch)
        angles.pitch = -angles.pitch;
    return angles;
}

PoseBucket bucket_pose(const PoseAngles& angles, double threshold_degrees) {
    if (angles.yaw > threshold_degrees)
        return PoseBucket::Right;
    if (angles.yaw < -threshold_degrees)
        return PoseBucket::Left;
    if (angles.pitch > threshold_degrees)
        return PoseBucket::Up;
    if (angles.pitch < -threshold_degrees)
        return PoseBucket::Down;
    return PoseBucket::Frontal;
}

bool roll_only_exceeds(const PoseAngles& angles, double threshold_degrees) {
    return std::abs(angles.roll) > threshold_degrees &&
           bucket_pose(angles, threshold_degrees) == PoseBucket::Frontal;
}

std::vector<ComponentKind> active_components(PoseBucket bucket) {
    std::vector<ComponentKind> out;
    out.reserve(kComponentCount);
    for (ComponentKind kind : all_components()) {
        const bool excluded =
            (bucket == PoseBucket::Left && kind == ComponentKind::RightEye) ||
            (bucket == PoseBucket::Right && kind == ComponentKind::LeftEye) ||
            (bucket == PoseBucket::Up && kind == ComponentKind::ForeheadEyebrow) ||
            (bucket == PoseBucket::Down && kind == ComponentKind::MouthChin);
        if (!excluded)
            out.push_back(kind);
    }
    return out;
}

} // namespace facekit
