#pragma once

#include "facekit/image.hpp"
#include "facekit/landmarks.hpp"

#include <array>
#include <cstdint>
#include <string_view>

namespace facekit {

/// Facial regions matched independently. Face is the whole-face region.
enum class ComponentKind : std::uint8_t {
    Face,
    LeftEye,
    RightEye,
    Nose,
    MouthChin,
    ForeheadEyebrow,
};

inline constexpr int kComponentCount = 6;

const std::array<ComponentKind, kComponentCount>& all_components();

std::string_view to_string(ComponentKind kind);
bool component_from_string(std::string_view name, ComponentKind& out);

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// Axis-aligned rectangle anchored at its top-right vertex P.
/// The box spans x in [p_x - l, p_x] and y in [p_y, p_y + b]
/// (raster axes: y grows downward).
struct BoundingBox {
    double p_x = 0.0;
    double p_y = 0.0;
    double l = 0.0; // horizontal extent, pixels
    double b = 0.0; // vertical extent, pixels
};

/// Scale factors applied when deriving component boxes from landmark pairs.
struct MarginConfig {
    double eye_breadth_scale = 1.5;
    double nose_length_scale = 0.5;
    double nose_breadth_scale = 1.4;
    double forehead_breadth_scale = 2.0;
    double face_pad = 0.05; // fraction of hull extent added on each side

    bool operator==(const MarginConfig&) const = default;
};

double euclidean_2d(Point2 p1, Point2 p2);

/// Derives the component's box from its landmark pair rules.
/// Throws DegenerateBox when the resulting l or b is not positive.
BoundingBox component_box(const LandmarkSet& ls, ComponentKind kind,
                          const MarginConfig& margins = {});

/// Copies the integer pixels inside the box, clipped to the image.
/// Box edges are rounded to the nearest integer; a box that rounds to
/// zero extent inside the image still yields at least 1x1.
/// Throws EmptyIntersection when the box lies fully outside the image.
GrayImage extract_roi(const GrayImage& img, const BoundingBox& box);

} // namespace facekit
