#include "facekit/geometry.hpp"

#include "facekit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace facekit {

namespace {

constexpr std::array<std::string_view, kComponentCount> kComponentNames = {
    "face", "left_eye", "right_eye", "nose", "mouth_chin", "forehead_eyebrow",
};

Point2 pixel(const LandmarkSet& ls, FacePointId id) {
    const Landmark& lm = ls.at(id);
    return {lm.px, lm.py};
}

double pixel_dist(const LandmarkSet& ls, FacePointId a, FacePointId b) {
    return euclidean_2d(pixel(ls, a), pixel(ls, b));
}

BoundingBox make_box(ComponentKind kind, double p_x, double p_y, double l, double b) {
    if (!(l > 0.0) || !(b > 0.0))
        throw Error(ErrorCode::DegenerateBox,
                    std::string(to_string(kind)) + ": box extents must be positive (l=" +
                        std::to_string(l) + ", b=" + std::to_string(b) + ")");
    return {p_x, p_y, l, b};
}

BoundingBox face_box(const LandmarkSet& ls, double pad) {
    double min_x = std::numeric_limits<double>::max();
    double max_x = std::numeric_limits<double>::lowest();
    for (const auto& [_, lm] : ls.points) {
        min_x = std::min(min_x, lm.px);
        max_x = std::max(max_x, lm.px);
    }
    const double top = ls.at(FacePointId::top_skull).py;
    const double bottom = ls.at(FacePointId::bottom_chin).py;

    const double span_x = max_x - min_x;
    const double span_y = bottom - top;
    const double x0 = min_x - pad * span_x;
    const double x1 = max_x + pad * span_x;
    const double y0 = top - pad * span_y;
    const double y1 = bottom + pad * span_y;
    return make_box(ComponentKind::Face, x1, y0, x1 - x0, y1 - y0);
}

} // namespace

const std::array<ComponentKind, kComponentCount>& all_components() {
    static const std::array<ComponentKind, kComponentCount> kinds = {
        ComponentKind::Face,      ComponentKind::LeftEye,
        ComponentKind::RightEye,  ComponentKind::Nose,
        ComponentKind::MouthChin, ComponentKind::ForeheadEyebrow,
    };
    return kinds;
}

std::string_view to_string(ComponentKind kind) {
    return kComponentNames[static_cast<std::size_t>(kind)];
}

bool component_from_string(std::string_view name, ComponentKind& out) {
    for (int i = 0; i < kComponentCount; ++i) {
        if (kComponentNames[static_cast<std::size_t>(i)] == name) {
            out = static_cast<ComponentKind>(i);
            return true;
        }
    }
    return false;
}

double euclidean_2d(Point2 p1, Point2 p2) {
    return std::hypot(p1.x - p2.x, p1.y - p2.y);
}

BoundingBox component_box(const LandmarkSet& ls, ComponentKind kind,
                          const MarginConfig& margins) {
    using Id = FacePointId;
    switch (kind) {
        case ComponentKind::MouthChin: {
            const double l =
                pixel_dist(ls, Id::outside_left_corner_mouth, Id::outside_right_corner_mouth);
            const double b = pixel_dist(ls, Id::top_dip_upper_lip, Id::bottom_chin);
            return make_box(kind, ls.at(Id::outside_right_corner_mouth).px,
                            ls.at(Id::top_dip_upper_lip).py, l, b);
        }
        case ComponentKind::LeftEye: {
            const double l = pixel_dist(ls, Id::left_of_left_eyebrow, Id::right_of_left_eyebrow);
            const double b = margins.eye_breadth_scale *
                             pixel_dist(ls, Id::mid_top_left_eyebrow, Id::under_mid_bottom_left_eyelid);
            return make_box(kind, ls.at(Id::right_of_left_eyebrow).px,
                            ls.at(Id::mid_top_left_eyebrow).py, l, b);
        }
        case ComponentKind::RightEye: {
            const double l = pixel_dist(ls, Id::left_of_right_eyebrow, Id::right_of_right_eyebrow);
            const double b = margins.eye_breadth_scale *
                             pixel_dist(ls, Id::mid_top_right_eyebrow, Id::under_mid_bottom_right_eyelid);
            return make_box(kind, ls.at(Id::right_of_right_eyebrow).px,
                            ls.at(Id::mid_top_right_eyebrow).py, l, b);
        }
        case ComponentKind::Nose: {
            const double l =
                margins.nose_length_scale * pixel_dist(ls, Id::mid_left_cheek, Id::mid_right_cheek);
            const double b = margins.nose_breadth_scale *
                             pixel_dist(ls, Id::midpoint_between_eyebrows, Id::nose_tip);
            return make_box(kind, ls.at(Id::nose_tip).px + l / 2.0,
                            ls.at(Id::midpoint_between_eyebrows).py, l, b);
        }
        case ComponentKind::ForeheadEyebrow: {
            const double l = pixel_dist(ls, Id::left_of_left_eyebrow, Id::right_of_right_eyebrow);
            const double b = margins.forehead_breadth_scale *
                             pixel_dist(ls, Id::middle_forehead, Id::midpoint_between_eyebrows);
            return make_box(kind, ls.at(Id::right_of_right_eyebrow).px,
                            ls.at(Id::middle_forehead).py, l, b);
        }
        case ComponentKind::Face:
            return face_box(ls, margins.face_pad);
    }
    throw Error(ErrorCode::DegenerateBox, "unknown component kind");
}

GrayImage extract_roi(const GrayImage& img, const BoundingBox& box) {
    long x0 = std::lround(box.p_x - box.l);
    long x1 = std::lround(box.p_x);
    long y0 = std::lround(box.p_y);
    long y1 = std::lround(box.p_y + box.b);
    if (x1 <= x0) x1 = x0 + 1; // rounding collapsed the box: keep 1px
    if (y1 <= y0) y1 = y0 + 1;

    const long cx0 = std::max(x0, 0L);
    const long cy0 = std::max(y0, 0L);
    const long cx1 = std::min(x1, static_cast<long>(img.width));
    const long cy1 = std::min(y1, static_cast<long>(img.height));
    if (cx0 >= cx1 || cy0 >= cy1)
        throw Error(ErrorCode::EmptyIntersection, "box lies outside the image");

    GrayImage out(static_cast<int>(cx1 - cx0), static_cast<int>(cy1 - cy0));
    for (long y = cy0; y < cy1; ++y)
        for (long x = cx0; x < cx1; ++x)
            out.at(static_cast<int>(x - cx0), static_cast<int>(y - cy0)) =
                img.at(static_cast<int>(x), static_cast<int>(y));
    return out;
}

} // namespace facekit
