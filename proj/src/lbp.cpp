#include "facekit/lbp.hpp"

#include "facekit/errors.hpp"

#include <string>

namespace facekit {

namespace {

// Clockwise from the top-left corner; offsets into a row-major 3x3 patch.
constexpr std::array<int, 8> kNeighborOffsets = {0, 1, 2, 5, 8, 7, 6, 3};

} // namespace

int lbp_code(const std::array<double, 9>& neighborhood) {
    const double center = neighborhood[4];
    int code = 0;
    for (int n = 0; n < 8; ++n) {
        if (neighborhood[kNeighborOffsets[n]] - center >= 0.0)
            code |= 1 << n;
    }
    return code;
}

GrayImage lbp_image(const RealImage& img) {
    if (img.width < 3 || img.height < 3)
        throw Error(ErrorCode::TooSmall,
                    "image must be at least 3x3 for LBP, got " +
                        std::to_string(img.width) + "x" + std::to_string(img.height));

    GrayImage out(img.width - 2, img.height - 2);
    for (int y = 1; y < img.height - 1; ++y) {
        for (int x = 1; x < img.width - 1; ++x) {
            const double c = img.at(x, y);
            int code = 0;
            code |= (img.at(x - 1, y - 1) >= c) << 0;
            code |= (img.at(x,     y - 1) >= c) << 1;
            code |= (img.at(x + 1, y - 1) >= c) << 2;
            code |= (img.at(x + 1, y)     >= c) << 3;
            code |= (img.at(x + 1, y + 1) >= c) << 4;
            code |= (img.at(x,     y + 1) >= c) << 5;
            code |= (img.at(x - 1, y + 1) >= c) << 6;
            code |= (img.at(x - 1, y)     >= c) << 7;
            out.at(x - 1, y - 1) = static_cast<std::uint8_t>(code);
        }
    }
    return out;
}

LbpDescriptor descriptor(const GrayImage& codes, ComponentKind kind, GridSpec grid) {
    if (grid.rows < 1 || grid.cols < 1 || grid.rows > codes.height ||
        grid.cols > codes.width)
        throw Error(ErrorCode::BadGrid,
                    "grid " + std::to_string(grid.rows) + "x" + std::to_string(grid.cols) +
                        " does not fit code image " + std::to_string(codes.width) + "x" +
                        std::to_string(codes.height));

    LbpDescriptor d;
    d.kind = kind;
    d.grid_rows = grid.rows;
    d.grid_cols = grid.cols;
    d.values.assign(static_cast<std::size_t>(grid.rows) * grid.cols * LbpDescriptor::kBins,
                    0.0);

    const int base_h = codes.height / grid.rows;
    const int base_w = codes.width / grid.cols;
    std::size_t offset = 0;
    for (int gr = 0; gr < grid.rows; ++gr) {
        const int y0 = gr * base_h;
        const int y1 = (gr == grid.rows - 1) ? codes.height : y0 + base_h;
        for (int gc = 0; gc < grid.cols; ++gc) {
            const int x0 = gc * base_w;
            const int x1 = (gc == grid.cols - 1) ? codes.width : x0 + base_w;

            for (int y = y0; y < y1; ++y)
                for (int x = x0; x < x1; ++x)
                    d.values[offset + codes.at(x, y)] += 1.0;

            const double count = static_cast<double>(y1 - y0) * (x1 - x0);
            for (int bin = 0; bin < LbpDescriptor::kBins; ++bin)
                d.values[offset + bin] /= count;
            offset += LbpDescriptor::kBins;
        }
    }
    return d;
}

} // namespace facekit
