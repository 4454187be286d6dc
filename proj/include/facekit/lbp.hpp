#pragma once

#include "facekit/geometry.hpp"
#include "facekit/image.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace facekit {

/// Concatenated per-region 256-bin histograms of an LBP-coded image,
/// region-major (grid rows, then columns). Each region's slice is
/// normalized by its pixel count.
struct LbpDescriptor {
    static constexpr int kBins = 256;

    ComponentKind kind = ComponentKind::Face;
    int grid_rows = 0;
    int grid_cols = 0;
    std::vector<double> values;

    bool operator==(const LbpDescriptor&) const = default;
};

struct GridSpec {
    int rows = 3;
    int cols = 3;

    bool operator==(const GridSpec&) const = default;
};

/// Code of the center pixel of a 3x3 neighborhood, row-major input
/// (center at index 4). Neighbors are read clockwise from the top-left
/// corner (TL, T, TR, R, BR, B, BL, L); neighbor n contributes 2^n when
/// it is >= the center. Ties count as 1.
int lbp_code(const std::array<double, 9>& neighborhood);

/// Codes for all interior pixels; output is (width-2) x (height-2).
/// Throws TooSmall when either dimension is below 3.
GrayImage lbp_image(const RealImage& img);

/// Splits the code image into rows x cols regions (remainder pixels go
/// to the last row/column) and concatenates their normalized histograms.
/// Throws BadGrid when the grid does not fit the image.
LbpDescriptor descriptor(const GrayImage& codes, ComponentKind kind, GridSpec grid);

} // namespace facekit
